"""Operator calculus on the bump-weighted walk matrices.

Builds the walk-matrix sequence by recursion, the Laplacian defect values,
the cyclic-bump operators, and machine-checks the generating-function
identities coefficient by coefficient in exact arithmetic.
"""

import math
from dataclasses import dataclass

from .paths import rooted_closed_tallies
from .series import (ONE_MINUS_T, TPOLY_ONE, TPOLY_T, TPOLY_ZERO, OperatorPoly,
                     OperatorSeries, TPoly, USeries)


class IdentityViolation(AssertionError):
    """An exact series identity failed; carries the failure report."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


@dataclass
class IdentityReport:
    identity: str
    graph: str
    root: int | None
    order: int
    passed: bool
    first_failure: dict | None = None

    def to_json(self):
        return {
            "identity": self.identity,
            "graph": self.graph,
            "root": self.root,
            "order": self.order,
            "pass": self.passed,
            "first_failure": self.first_failure,
        }

    def __str__(self):
        state = "pass" if self.passed else f"FAIL at {self.first_failure}"
        where = f"root {self.root}" if self.root is not None else "all vertices"
        return f"{self.identity} on {self.graph} ({where}, order {self.order}): {state}"


def adjacency_poly(g):
    n = g.vertex_count
    rows = [[TPOLY_ZERO] * n for _ in range(n)]
    for e in g.edges:
        rows[e.origin][e.terminus] = TPOLY_ONE
    return OperatorPoly(rows)


def degree_poly(g):
    return OperatorPoly.diagonal([TPoly((d,)) for d in g.degrees])


def qxt_poly(g):
    """Valency minus (1-t) on the diagonal."""
    return OperatorPoly.diagonal([TPoly((d - 1, 1)) for d in g.degrees])


def cm_sequence(g, order):
    """Walk matrices C_0..C_order from the two-term recursion.

    C_0 = I, C_1 = adjacency, C_2 = C_1^2 - (1-t) (Q + I), and for m >= 3
    C_m = C_{m-1} C_1 - (1-t) C_{m-2} (D - (1-t) I).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    n = g.vertex_count
    a = adjacency_poly(g)
    seq = [OperatorPoly.identity(n)]
    if order >= 1:
        seq.append(a)
    if order >= 2:
        q_plus_i = OperatorPoly.diagonal([TPoly((d,)) for d in g.degrees])
        seq.append(a * a - q_plus_i.scale(ONE_MINUS_T))
    qt = qxt_poly(g)
    for _ in range(3, order + 1):
        seq.append(seq[-1] * a - (seq[-2] * qt).scale(ONE_MINUS_T))
    return seq


def delta_diag(g, c):
    """Laplacian applied to the diagonal function y -> C(y, y).

    Value at x is deg(x) C(x,x) - sum over out-edges of C(head, head).
    """
    diag = c.diag()
    out = []
    for x in range(g.vertex_count):
        acc = diag[x] * g.degrees[x]
        for y in g.neighbors(x):
            acc = acc - diag[y]
        out.append(acc)
    return out


def delta_product_diag(g, c):
    """Diagonal of the matrix product (Laplacian * C) -- the rejected
    alternative reading of the defect term, kept behind a flag so the
    negative test can show it breaks the cyclic-bump identity."""
    out = []
    for x in range(g.vertex_count):
        acc = c.entry(x, x) * g.degrees[x]
        for y in g.neighbors(x):
            acc = acc - c.entry(y, x)
        out.append(acc)
    return out


def _delta_values(g, c, interpretation):
    if interpretation == "diagonal":
        return delta_diag(g, c)
    if interpretation == "operator":
        return delta_product_diag(g, c)
    raise ValueError(f"unknown interpretation {interpretation!r}")


def r_values(g, order, *, interpretation="diagonal", cms=None):
    """Per-vertex defect values for every m <= order.

    R_m(x) = sum_{j=1}^{ceil(m/2)-1} sum_{i=1}^{j}
             (1-t)^(2(j-i)) (1-t^2)^(i-1) * [Laplacian defect of C_{m-2j}](x).

    Returns a list indexed by m of per-vertex TPoly lists; m <= 2 rows are
    zero (empty outer sum).
    """
    if cms is None:
        cms = cm_sequence(g, max(order - 2, 0))
    n = g.vertex_count
    zero_row = [TPOLY_ZERO] * n
    if order < 3:
        return [list(zero_row) for _ in range(order + 1)]
    deltas = [_delta_values(g, cms[k], interpretation) for k in range(order - 1)]
    one_minus_t_sq = ONE_MINUS_T * ONE_MINUS_T
    one_minus_t2 = TPoly((1, 0, -1))
    # a_j = sum_{i=1}^{j} (1-t)^(2(j-i)) (1-t^2)^(i-1)
    a = [TPOLY_ZERO, TPOLY_ONE]
    max_j = (order + 1) // 2
    for j in range(2, max_j + 1):
        a.append(a[-1] * one_minus_t_sq + one_minus_t2 ** (j - 1))
    out = [list(zero_row), list(zero_row), list(zero_row)]
    for m in range(3, order + 1):
        row = []
        top = (m + 1) // 2 - 1
        for x in range(n):
            acc = TPOLY_ZERO
            for j in range(1, top + 1):
                d = deltas[m - 2 * j][x]
                if not d.is_zero():
                    acc = acc + a[j] * d
            row.append(acc)
        out.append(row)
    return out


def r_m(g, m, *, interpretation="diagonal"):
    """Per-vertex defect values for a single length m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return r_values(g, m, interpretation=interpretation)[m]


def cm_cbc(g, m, *, cms=None, r=None):
    """Cyclic-bump walk operator.

    Identity and adjacency at lengths 0 and 1, t * C_2 at length 2, and for
    m >= 3 the walk matrix corrected by the diagonal factor
    (D - 2(1-t) I) sum_j (1-t)^(2j-1) C_{m-2j}, the defect diagonal, and the
    even-length valency term.  Its diagonal equals the cyclic-bump tally of
    closed walks.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if cms is None:
        cms = cm_sequence(g, m)
    if m <= 1:
        return cms[m]
    if m == 2:
        return cms[2].scale(TPOLY_T)
    n = g.vertex_count
    acc = OperatorPoly.zero(n)
    for j in range(1, (m + 1) // 2):
        acc = acc + cms[m - 2 * j].scale(ONE_MINUS_T ** (2 * j - 1))
    dfac = OperatorPoly.diagonal([TPoly((d - 2, 2)) for d in g.degrees])
    result = cms[m] - dfac * acc
    if r is None:
        r = r_values(g, m, cms=cms)[m]
    else:
        r = r[m] if isinstance(r[0], list) else r
    result = result + OperatorPoly.diagonal([v * ONE_MINUS_T for v in r])
    if m % 2 == 0:
        even = ONE_MINUS_T ** (m - 1) * TPOLY_T
        result = result - OperatorPoly.diagonal([even * d for d in g.degrees])
    return result


def alpha(g, t_abs):
    """Growth base bounding the walk-matrix operator norms: norm of the
    length-m matrix at |t| is at most alpha^m."""
    if t_abs < 0:
        raise ValueError("t_abs must be >= 0")
    big_m = g.max_degree
    return (big_m + math.sqrt(big_m * big_m + 4.0 * (t_abs + 1.0) * big_m)) / 2.0


# ---------------------------------------------------------------------------
# identity checks


def _series_from(order, terms, start=1):
    """USeries with coefficient terms[m] at u^m for start <= m < len(terms)."""
    coeffs = [TPOLY_ZERO] * (order + 1)
    for m in range(start, min(len(terms), order + 1)):
        coeffs[m] = terms[m]
    return USeries(order, coeffs)


def _quadratic(order, a):
    """1 - a u^2 as a USeries."""
    return USeries(order, [TPOLY_ONE, TPOLY_ZERO, -a])


def _first_difference(lhs, rhs):
    for m in range(lhs.order + 1):
        if lhs.coefficient(m) != rhs.coefficient(m):
            diff = lhs.coefficient(m) - rhs.coefficient(m)
            return {"u_power": m, "difference": str(diff)}
    return None


def _report(identity, g, root, order, failures, strict):
    report = IdentityReport(
        identity=identity,
        graph=g.label,
        root=root,
        order=order,
        passed=not failures,
        first_failure=failures[0] if failures else None,
    )
    if strict and failures:
        raise IdentityViolation(report)
    return report


def check_no_tail_identity(g, x0, order, *, strict=False):
    """Verify the closed-form identities tying the tail-free closed-walk
    series to the walk-matrix series at one root.

    Display one: (1-(1-t)^2 u^2) N(u) equals
    (1-(deg-(1-t^2)) u^2) C(u) - deg t u^2 + u^2 (1-(1-t^2)u^2)^(-1) DC(u)
    where N is the tail-free cyclic-bump tally series, C the diagonal
    walk-matrix series, DC the Laplacian-defect series.  Display two is the
    per-length expansion for m >= 3.  Both compared exactly.
    """
    if order < 4:
        raise ValueError("order must be >= 4")
    _, _, notail = rooted_closed_tallies(g, x0, order)
    cms = cm_sequence(g, order)
    deg = g.degrees[x0]
    c_terms = [cms[m].entry(x0, x0) for m in range(order + 1)]
    d_terms = [delta_diag(g, cms[m])[x0] for m in range(order + 1)]
    n_series = _series_from(order, notail)
    c_series = _series_from(order, c_terms)
    d_series = _series_from(order, d_terms)
    one_minus_t2 = TPoly((1, 0, -1))

    failures = []
    lhs = _quadratic(order, ONE_MINUS_T * ONE_MINUS_T) * n_series
    rhs = (
        _quadratic(order, TPoly((deg - 1, 0, 1))) * c_series
        - USeries(order, [TPOLY_ZERO, TPOLY_ZERO, TPoly((0, deg))])
        + _quadratic(order, one_minus_t2).inverse() * d_series.shift(2)
    )
    diff = _first_difference(lhs, rhs)
    if diff:
        failures.append({"display": "series", **diff})

    rv = r_values(g, order)
    for m in range(3, order + 1):
        acc = TPOLY_ZERO
        for j in range(1, (m + 1) // 2):
            acc = acc + ONE_MINUS_T ** (2 * (j - 1)) * c_terms[m - 2 * j]
        rhs_m = c_terms[m] - TPoly((deg - 2, 2)) * acc + rv[m][x0]
        if m % 2 == 0:
            rhs_m = rhs_m - ONE_MINUS_T ** (m - 2) * TPoly((0, deg))
        if notail[m] != rhs_m:
            failures.append({"display": "per-length", "u_power": m,
                             "difference": str(notail[m] - rhs_m)})
            break
    return _report("no-tail-series", g, x0, order, failures, strict)


def check_cyclic_bump_identity(g, x0, order, *, interpretation="diagonal", strict=False):
    """Verify the closed-form identities tying the cyclic-bump closed-walk
    series to the walk-matrix series at one root.

    The series display multiplies out to polynomial coefficients; the
    per-length display checks every m >= 3 against the enumeration.  The
    final valency term is read as -(1-(1-t^2)u^2) t deg (1-t) u^2, which is
    what the summed per-length identities produce.
    """
    if order < 4:
        raise ValueError("order must be >= 4")
    cbc_all, _, _ = rooted_closed_tallies(g, x0, order)
    cms = cm_sequence(g, order)
    deg = g.degrees[x0]
    c_terms = [cms[m].entry(x0, x0) for m in range(order + 1)]
    d_terms = [_delta_values(g, cms[m], interpretation)[x0] for m in range(order + 1)]
    cbc_series = _series_from(order, cbc_all)
    c_series = _series_from(order, c_terms)
    d_series = _series_from(order, d_terms)
    one_minus_t2 = TPoly((1, 0, -1))
    one_minus_t_sq = ONE_MINUS_T * ONE_MINUS_T

    failures = []
    lhs = _quadratic(order, one_minus_t2) * _quadratic(order, one_minus_t_sq) * cbc_series
    bracket = USeries(
        order,
        [
            TPOLY_ONE,
            TPOLY_ZERO,
            -(ONE_MINUS_T * TPoly((deg, 2))),
            TPOLY_ZERO,
            one_minus_t2 * ONE_MINUS_T * TPoly((deg - 1, 1)),
        ],
    )
    rhs = (
        bracket * c_series
        + d_series.shift(2) * ONE_MINUS_T
        - _quadratic(order, one_minus_t2) * USeries(
            order, [TPOLY_ZERO, TPOLY_ZERO, TPoly((0, deg)) * ONE_MINUS_T]
        )
    )
    diff = _first_difference(lhs, rhs)
    if diff:
        failures.append({"display": "series", **diff})

    rv = r_values(g, order, interpretation=interpretation)
    for m in range(3, order + 1):
        acc = TPOLY_ZERO
        for j in range(1, (m + 1) // 2):
            acc = acc + ONE_MINUS_T ** (2 * j - 1) * c_terms[m - 2 * j]
        rhs_m = c_terms[m] - TPoly((deg - 2, 2)) * acc + ONE_MINUS_T * rv[m][x0]
        if m % 2 == 0:
            rhs_m = rhs_m - ONE_MINUS_T ** (m - 1) * TPoly((0, deg))
        if cbc_all[m] != rhs_m:
            failures.append({"display": "per-length", "u_power": m,
                             "difference": str(cbc_all[m] - rhs_m)})
            break
    return _report("cyclic-bump-series", g, x0, order, failures, strict)


def check_series_inverse_identity(g, order, *, strict=False):
    """Verify that the walk-matrix series is a one-sided inverse of
    I - u A + (1-t)(D - (1-t)I) u^2, exactly as operator series.

    Plain form: (sum C_m u^m) B = (1-(1-t)^2 u^2) I.  Folded form: summing
    C_{m-2j} (1-t)^(2j) over j makes the product exactly I.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    n = g.vertex_count
    cms = cm_sequence(g, order)
    a = adjacency_poly(g)
    qt = qxt_poly(g)
    b = OperatorSeries(
        n, order,
        [OperatorPoly.identity(n), -a, qt.scale(ONE_MINUS_T)],
    )
    s1 = OperatorSeries(n, order, cms)
    one_minus_t_sq = ONE_MINUS_T * ONE_MINUS_T

    failures = []
    lhs1 = s1 * b
    rhs1 = OperatorSeries.scalar(_quadratic(order, one_minus_t_sq), n)
    if lhs1 != rhs1:
        for m in range(order + 1):
            if lhs1.coefficient(m) != rhs1.coefficient(m):
                failures.append({"display": "plain", "u_power": m})
                break

    folded = [cms[0]]
    for m in range(1, order + 1):
        fm = cms[m]
        if m >= 2:
            fm = fm + folded[m - 2].scale(one_minus_t_sq)
        folded.append(fm)
    lhs2 = OperatorSeries(n, order, folded) * b
    if lhs2 != OperatorSeries.identity(n, order):
        for m in range(order + 1):
            if lhs2.coefficient(m) != (OperatorPoly.identity(n) if m == 0 else OperatorPoly.zero(n)):
                failures.append({"display": "folded", "u_power": m})
                break
    return _report("walk-series-inverse", g, None, order, failures, strict)


def check_r_generating_identity(g, x0, order, *, interpretation="diagonal", strict=False):
    """Verify the closed form of the defect generating function:
    sum_m R_m(x0) u^m = u^2 / ((1-(1-t)^2 u^2)(1-(1-t^2)u^2)) * DC(u)."""
    if order < 3:
        raise ValueError("order must be >= 3")
    cms = cm_sequence(g, order)
    rv = r_values(g, order, interpretation=interpretation, cms=cms)
    d_terms = [_delta_values(g, cms[m], interpretation)[x0] for m in range(order + 1)]
    r_series = _series_from(order, [row[x0] for row in rv])
    d_series = _series_from(order, d_terms)
    one_minus_t2 = TPoly((1, 0, -1))
    rhs = (
        _quadratic(order, ONE_MINUS_T * ONE_MINUS_T).inverse()
        * _quadratic(order, one_minus_t2).inverse()
        * d_series.shift(2)
    )
    failures = []
    diff = _first_difference(r_series, rhs)
    if diff:
        failures.append({"display": "series", **diff})
    return _report("defect-generating-function", g, x0, order, failures, strict)
