import sys
from pathlib import Path

import pytest

import homsuper as hs

sys.path.insert(0, str(Path(__file__).parent))


def make_algebra(dim_even, dim_odd, entries, alpha=None, name=""):
    space = hs.SuperSpace(dim_even, dim_odd)
    product = hs.BilinearOp(space, entries=entries)
    if alpha is None:
        alpha = hs.EvenMap.identity(space)
    elif not isinstance(alpha, hs.EvenMap):
        alpha = hs.EvenMap.diagonal(space, alpha)
    return hs.HomSuperalgebra(space, product, alpha, name=name)


@pytest.fixture
def a2b():
    return make_algebra(2, 0, {(0, 0, 1): 1}, name="a2b")


@pytest.fixture
def f2e():
    return make_algebra(1, 1, {(1, 1, 0): 1}, name="f2e")


@pytest.fixture(scope="session")
def corpus():
    """All packaged fixtures as (path, algebra) pairs."""
    paths = hs.corpus_paths()
    assert paths, "packaged corpus is missing"
    return [(path, hs.load_algebra(path)) for path in paths]


@pytest.fixture(scope="session")
def corpus_leibniz(corpus):
    return [(path, algebra) for path, algebra in corpus
            if algebra.metadata["expected"].get("leibniz")]
