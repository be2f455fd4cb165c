import numpy as np
import pytest

from modlie.ffalg import Subspace, kernel, span
from modlie.liecore import (LieAlgebra, NotALieAlgebraError, SubalgebraHandle, bracket_span,
                            center, centralizer_of_element, derived_series, derived_subalgebra,
                            is_ad_nilpotent, is_ideal, is_nilpotent, is_solvable,
                            lower_central_series, normalizer, quotient_algebra, scan_partners,
                            solvable_radical, subalgebra_closure)
from modlie.rootdata import simple_lie_algebra


def abelian(n, p=3):
    return LieAlgebra(np.zeros((n, n, n), dtype=np.int64), p)


def two_dim_nonabelian(p=3):
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[0, 1, 1], C[1, 0, 1] = 1, -1  # [x, y] = y
    return LieAlgebra(C, p)


def heisenberg(p=3):
    C = np.zeros((3, 3, 3), dtype=np.int64)
    C[0, 1, 2], C[1, 0, 2] = 1, -1
    return LieAlgebra(C, p)


@pytest.fixture(scope="module")
def sl2():
    return simple_lie_algebra("A1", 3)


@pytest.fixture(scope="module")
def L0(regraded, g):
    return SubalgebraHandle(g, regraded.L.component(0))


def test_bracket_basics(g, e, f, tau_grading):
    rng = np.random.default_rng(0)
    x = rng.integers(0, 3, size=52)
    assert not g.bracket(x, x).any()
    ea, fa = g.element([(1, "e_1000")]), g.element([(1, "f_1000")])
    assert np.array_equal(g.bracket(ea, fa), g.element([(1, "h_1")]))
    ef = g.bracket(e, f)
    assert ef.any() and tau_grading.degree_of(ef) == -8


def test_bracket_nonsimple_coroot(g):
    # e_0110 has coroot h_2 + h_3 with the short root alpha_3 scaled: check via [e, f] in the Cartan span
    h = g.bracket(g.element([(1, "e_0110")]), g.element([(1, "f_0110")]))
    assert np.flatnonzero(h).min() >= 48


def test_closure_dims(g, e, L, W):
    assert L.dim == 26
    assert W.dim == 18
    assert subalgebra_closure(g, e).dim == 1


def test_closure_idempotent(g, L, W):
    for s in (L, W):
        assert subalgebra_closure(g, s.basis).space == s.space
        assert s.is_closed()


def test_centralizers(g, e, sl2):
    assert centralizer_of_element(g, g.zero()).dim == 52
    ge = centralizer_of_element(g, e)
    assert ge.dim == 6
    assert not g.brackets(e, ge.basis).any()
    h = sl2.element([(1, "h_1")])
    assert centralizer_of_element(sl2, h).space == span([h], 3, 3)


def test_centralizer_excluded_vectors_fail(g, e):
    ge = centralizer_of_element(g, e)
    rng = np.random.default_rng(5)
    for _ in range(20):
        v = rng.integers(0, 3, size=52)
        assert ge.contains(v) == (not g.bracket(e, v).any())


def test_normalizers(g, L, sl2):
    assert normalizer(SubalgebraHandle(g, g.full_space())).dim == 52
    N = normalizer(L)
    assert N.space == L.space
    borel = SubalgebraHandle(sl2, span([sl2.element([(1, "h_1")]), sl2.element([(1, "e_1")])], 3, 3))
    assert normalizer(borel).space == borel.space


def test_normalizer_contract(g, W):
    N = normalizer(W)
    for x in N.basis:
        assert W.space.contains_space(bracket_span(g, span([x], 52, 3), W.space))
    rng = np.random.default_rng(2)
    for _ in range(10):
        v = rng.integers(0, 3, size=52)
        inside = W.space.contains_space(bracket_span(g, span([v], 52, 3), W.space))
        assert N.contains(v) == inside


def test_derived_examples():
    assert derived_subalgebra(abelian(2)).dim == 0
    from modlie.cartantype import build_ermolaev
    assert derived_subalgebra(build_ermolaev(1, 1, 3)).dim == 26


def test_series_monotone(L0):
    for series in (derived_series(L0), lower_central_series(L0)):
        dims = [s.dim for s in series]
        assert all(a > b for a, b in zip(dims, dims[1:]))


def test_radical_of_L0(L0):
    R = solvable_radical(L0)
    assert R.dim == 3
    assert lower_central_series(R)[-1].dim == 0
    assert is_nilpotent(R)


def test_radical_small_cases(sl2):
    assert solvable_radical(sl2).dim == 0
    t = two_dim_nonabelian()
    assert solvable_radical(t).dim == 2
    assert solvable_radical(heisenberg()).dim == 3


def test_radical_contract(L0):
    R = solvable_radical(L0)
    assert is_ideal(L0, R.space) and is_solvable(R)
    local = Subspace(L0.coordinates(R.basis), L0.dim, 3)
    Q, _ = quotient_algebra(L0.algebra, local)
    assert Q.dim == 3 and solvable_radical(Q).dim == 0


def test_radical_cap(g):
    with pytest.raises(ValueError):
        solvable_radical(g)


def test_centers(g, regraded):
    A = abelian(3)
    assert center(A).dim == 3
    W0 = SubalgebraHandle(g, regraded.W.component(0))
    assert center(W0).dim == 1
    # independent: x central iff [b_i, x] = 0 for every basis vector
    stacked = np.vstack(list(g.ad_basis))
    assert kernel(stacked, 3).dim == 0 == center(g).dim


def test_ad_nilpotent(g, e):
    ok, idx = is_ad_nilpotent(g, e)
    assert ok and idx == 9
    assert is_ad_nilpotent(g, g.element([(1, "h_1")])) == (False, 0)
    assert is_ad_nilpotent(g, g.zero()) == (True, 1)


def test_scan_partners(g, e, f, tau_grading):
    hits = scan_partners(g, e, span([f], 52, 3), 26)
    assert len(hits) == 1 and span(hits, 52, 3) == span([f], 52, 3)
    assert scan_partners(g, e, Subspace.zero(52, 3), 26) == []
    cand = tau_grading.component(-10)
    assert cand.dim == 3
    hits = scan_partners(g, e, cand, 26)
    assert any(span([h], 52, 3) == span([f], 52, 3) for h in hits)
    with pytest.raises(ValueError):
        scan_partners(g, e, g.full_space(), 26)


def test_quotient_is_lie(L0):
    R = solvable_radical(L0)
    local = Subspace(L0.coordinates(R.basis), L0.dim, 3)
    Q, section = quotient_algebra(L0.algebra, local)
    assert section.shape == (Q.dim, L0.dim)


def test_non_lie_refused():
    C = np.zeros((3, 3, 3), dtype=np.int64)
    C[0, 1, 2], C[1, 0, 2] = 1, -1
    C[0, 2, 0], C[2, 0, 0] = 1, -1
    C[1, 2, 0], C[2, 1, 0] = 1, -1
    with pytest.raises(NotALieAlgebraError):
        LieAlgebra(C, 3)
