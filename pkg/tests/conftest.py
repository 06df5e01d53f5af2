import pytest

from bzk.graphs import generate

# The standing verification corpus.  Vertex-transitive members are where the
# rooted per-length identities are exact; see tests on the others for the
# documented defect.
CORPUS = {
    "triangle": generate("cycle", 3),
    "cycle(4)": generate("cycle", 4),
    "cycle(6)": generate("cycle", 6),
    "K4": generate("complete", 4),
    "star(4)": generate("star", 4),
    "path(4)": generate("path", 4),
    "Q3": generate("hypercube", 3),
    "petersen": generate("petersen"),
    "tree_ball(3,3)": generate("tree_ball", 3, 3),
}

VERTEX_TRANSITIVE = ("triangle", "cycle(4)", "cycle(6)", "K4", "Q3", "petersen")
NON_TRANSITIVE = ("star(4)", "path(4)", "tree_ball(3,3)")
REGULAR = ("triangle", "cycle(4)", "cycle(6)", "K4", "Q3", "petersen")


@pytest.fixture(scope="session")
def corpus():
    return CORPUS
