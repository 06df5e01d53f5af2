"""Independent test-side oracles: deliberately dumb implementations used to
cross-check the library, sharing no code with it."""

from collections import deque
from fractions import Fraction


def bfs_girth(g):
    """Shortest cycle length by BFS from every vertex."""
    best = None
    for s in range(g.vertex_count):
        dist = {s: 0}
        parent_edge = {s: None}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for eid in g.out_edges[v]:
                w = g.edges[eid].terminus
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = eid
                    queue.append(w)
                elif parent_edge[v] is None or eid != g.twin(parent_edge[v]):
                    cycle = dist[v] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def canonical_rooted_tree(g, root):
    """Canonical nested-tuple encoding of a tree rooted at root."""
    def encode(v, parent):
        children = sorted(
            encode(w, v) for w in g.neighbors(v) if w != parent
        )
        return tuple(children)

    return encode(root, None)


def quadratic_form(matrix, vector):
    """<M v, v> over Fractions."""
    n = len(vector)
    total = Fraction(0)
    for i in range(n):
        row_dot = sum(Fraction(matrix[i][j]) * vector[j] for j in range(n))
        total += row_dot * vector[i]
    return total


def int_matrix_power(mat, k):
    n = len(mat)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(row) for row in mat]
    for _ in range(k):
        out = [
            [sum(out[i][l] * base[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return out


def poly_eval_fraction(p, t):
    """Evaluate a TPoly at an exact rational point."""
    acc = Fraction(0)
    for c in reversed(p.c):
        acc = acc * t + c
    return acc
