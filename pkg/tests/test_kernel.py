import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import homsuper as hs
from conftest import make_algebra
import naive


@st.composite
def graded_bilinear_ops(draw):
    dim_even = draw(st.integers(0, 2))
    dim_odd = draw(st.integers(0, 2))
    space = hs.SuperSpace(dim_even, dim_odd)
    entries = {}
    for i, j in itertools.product(range(space.dim), repeat=2):
        want = (space.parity(i) + space.parity(j)) % 2
        for k in range(space.dim):
            if space.parity(k) != want:
                continue
            value = draw(st.integers(-3, 3))
            if value:
                entries[(i, j, k)] = value
    return space, hs.BilinearOp(space, entries=entries)


def test_make_superspace_cases():
    empty = hs.make_superspace(0, 0)
    assert empty.dim == 0 and empty.labels == ()
    even = hs.make_superspace(2, 0)
    assert even.parities == (0, 0)
    mixed = hs.make_superspace(1, 1)
    assert mixed.parities == (0, 1)
    assert mixed.labels == ("b1", "b2")


def test_superspace_rejects_negative_dims():
    with pytest.raises(ValueError):
        hs.SuperSpace(-1, 0)


def test_vector_arithmetic_and_homogeneity():
    sp = hs.SuperSpace(1, 1)
    e, f = sp.basis_vector(0), sp.basis_vector(1)
    assert (e + f).coords == (1, 1)
    assert (e - e).is_zero()
    assert e.scale(Fraction(1, 2)).coords == (Fraction(1, 2), 0)
    assert e.is_homogeneous(0) and not e.is_homogeneous(1)
    assert f.is_homogeneous(1)
    assert sp.zero_vector().is_homogeneous(0)
    assert sp.zero_vector().is_homogeneous(1)
    assert not (e + f).is_homogeneous(0)


def test_vector_dimension_mismatch():
    sp = hs.SuperSpace(2, 0)
    other = hs.SuperSpace(1, 1)
    with pytest.raises(hs.DimensionMismatch):
        hs.Vector(sp, (1,))
    with pytest.raises(hs.DimensionMismatch):
        sp.basis_vector(0) + other.basis_vector(0)


def test_eval_bilinear_examples():
    sp = hs.SuperSpace(2, 0)
    zero_op = hs.BilinearOp(sp)
    a, b = sp.basis_vector(0), sp.basis_vector(1)
    assert hs.eval_bilinear(zero_op, a, b).is_zero()

    prod = hs.BilinearOp(sp, entries={(0, 0, 1): 1})
    assert hs.eval_bilinear(prod, a, a) == b
    assert hs.eval_bilinear(prod, a, a.scale(2) + b) == b.scale(2)


def test_eval_ternary_examples():
    sp = hs.SuperSpace(2, 0)
    zero_op = hs.TernaryOp(sp)
    b1, b2 = sp.basis_vector(0), sp.basis_vector(1)
    assert hs.eval_ternary(zero_op, b1, b1, b1).is_zero()

    t = hs.TernaryOp(sp, entries={(0, 0, 0, 1): 1})
    assert hs.eval_ternary(t, b1, b1, b1) == b2
    assert hs.eval_ternary(t, b1.scale(2), b1, b1) == b2.scale(2)


def test_even_map_action_and_powers():
    sp = hs.SuperSpace(2, 0)
    ident = hs.EvenMap.identity(sp)
    a, b = sp.basis_vector(0), sp.basis_vector(1)
    assert hs.apply_map(ident, a + b) == a + b

    diag = hs.EvenMap.diagonal(sp, [2, 4])
    assert hs.apply_map(diag, a) == a.scale(2)
    assert hs.power(diag, 2) == hs.EvenMap.diagonal(sp, [4, 16])
    assert hs.power(diag, 0) == ident


def test_even_map_power_composition_law():
    sp = hs.SuperSpace(1, 1)
    m = hs.EvenMap(sp, [["2", "0"], ["0", "-3"]])
    for j, k in itertools.product(range(4), repeat=2):
        assert hs.compose(hs.power(m, j), hs.power(m, k)) == hs.power(m, j + k)


def test_even_map_rejects_parity_violation():
    sp = hs.SuperSpace(1, 1)
    with pytest.raises(hs.ParityError):
        hs.EvenMap(sp, [["0", "1"], ["0", "0"]])


def test_even_map_dimension_mismatch():
    sp = hs.SuperSpace(1, 1)
    other = hs.SuperSpace(2, 0)
    m = hs.EvenMap.identity(sp)
    with pytest.raises(hs.DimensionMismatch):
        m(other.basis_vector(0))
    with pytest.raises(hs.DimensionMismatch):
        m.compose(hs.EvenMap.identity(other))


def test_check_grading_examples():
    sp = hs.SuperSpace(1, 1)
    assert hs.check_grading(hs.BilinearOp(sp)).passed

    odd_square = hs.BilinearOp(sp, entries={(1, 1, 0): 1})
    assert hs.check_grading(odd_square).passed

    bad = hs.BilinearOp(sp, entries={(0, 1, 0): 1})
    report = hs.check_grading(bad)
    assert not report.passed
    assert report.counterexamples == [{"index": [1, 2, 1]}]


def test_check_grading_ternary():
    sp = hs.SuperSpace(1, 1)
    good = hs.TernaryOp(sp, entries={(1, 1, 0, 0): 1})
    assert hs.check_grading(good).passed
    bad = hs.TernaryOp(sp, entries={(1, 1, 0, 1): 1})
    report = hs.check_grading(bad)
    assert not report.passed
    assert report.counterexamples == [{"index": [2, 2, 1, 2]}]


def test_check_multiplicativity_examples(a2b):
    assert hs.check_multiplicativity(a2b).passed
    assert a2b.multiplicative is True

    good = make_algebra(2, 0, {(0, 0, 1): 1}, alpha=[2, 4])
    assert hs.check_multiplicativity(good).passed

    bad = make_algebra(2, 0, {(0, 0, 1): 1}, alpha=[2, 3])
    report = hs.check_multiplicativity(bad)
    assert not report.passed
    assert report.counterexamples[0]["tuple"] == ["b1", "b1"]
    assert bad.multiplicative is False


def test_check_multiplicativity_covers_ternary():
    sp = hs.SuperSpace(2, 0)
    prod = hs.BilinearOp(sp)
    tern = hs.TernaryOp(sp, entries={(0, 0, 0, 1): 1})
    alpha = hs.EvenMap.diagonal(sp, [2, 4])
    algebra = hs.HomSuperalgebra(sp, prod, alpha, ternary=tern)
    # alpha(t(b1,b1,b1)) = 4 b2 but t(2b1,2b1,2b1) = 8 b2.
    report = hs.check_multiplicativity(algebra)
    assert not report.passed
    assert report.counterexamples[0]["tuple"] == ["b1", "b1", "b1"]


def test_grading_preserves_parity_exhaustively():
    # For every parity-respecting op and homogeneous basis inputs the result
    # is homogeneous of the summed parity; checked over all basis pairs of a
    # mixed-parity algebra with both sectors populated.
    algebra = make_algebra(1, 1, {(0, 0, 0): 2, (1, 1, 0): 1, (0, 1, 1): -1})
    sp = algebra.space
    assert hs.check_grading(algebra.product).passed
    for i, j in itertools.product(range(sp.dim), repeat=2):
        out = algebra.product.on_basis(i, j)
        assert out.is_homogeneous((sp.parity(i) + sp.parity(j)) % 2)


def test_even_map_preserves_parity():
    sp = hs.SuperSpace(2, 2)
    m = hs.EvenMap(sp, [["1", "2", "0", "0"], ["0", "1", "0", "0"],
                        ["0", "0", "3", "1"], ["0", "0", "0", "5"]])
    for i in range(sp.dim):
        assert m.on_basis(i).is_homogeneous(sp.parity(i))


@settings(max_examples=80, deadline=None)
@given(graded_bilinear_ops(), st.integers(-2, 2), st.integers(-2, 2))
def test_graded_products_preserve_parity(space_op, c1, c2):
    # Whenever the grading check passes, homogeneous inputs multiply to
    # homogeneous outputs of the summed parity, including linear
    # combinations within one parity sector.
    space, op = space_op
    assert hs.check_grading(op).passed
    sectors = {0: [i for i in range(space.dim) if space.parity(i) == 0],
               1: [i for i in range(space.dim) if space.parity(i) == 1]}
    for px, py in itertools.product((0, 1), repeat=2):
        for i in sectors[px]:
            x = space.basis_vector(i).scale(c1)
            if len(sectors[px]) > 1:
                x = x + space.basis_vector(sectors[px][-1]).scale(c2)
            for j in sectors[py]:
                y = space.basis_vector(j)
                assert op(x, y).is_homogeneous((px + py) % 2)


def test_bilinear_agrees_with_naive_oracle():
    algebra = make_algebra(2, 1, {(0, 0, 1): 2, (1, 2, 2): -1, (2, 2, 0): 3},
                           alpha=[1, 1, 1])
    n = algebra.space.dim
    for i, j in itertools.product(range(n), repeat=2):
        got = algebra.product.on_basis(i, j).coords
        want = naive.mul(algebra.product.table, naive.basis(n, i),
                         naive.basis(n, j))
        assert list(got) == want
