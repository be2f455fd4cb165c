import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modlie.cartantype import build_ermolaev, ermolaev_grading
from modlie.ffalg import span
from modlie.grading import (REGRADING_TABLE, Cocharacter, Grading, IllDefinedGradingError,
                            NotHomogeneousError, cocharacter_grading, derive_cocharacter,
                            duality_check, find_sl2_triple, is_isomorphism, is_sl2_triple,
                            recognition_certificate, regrade_by_table, sign_scan)
from modlie.liecore import SubalgebraHandle, derived_subalgebra
from modlie.pipeline import E_TERMS
from modlie.rootdata import normalize_label, simple_lie_algebra

E_ROOTS = [tuple(int(c) for c in normalize_label(lab)[2:]) for _, lab in E_TERMS]


def test_cocharacter_unique():
    sol = derive_cocharacter(E_ROOTS)
    assert sol.unique and sol.cocharacter == Cocharacter((2, 2, 0, 2))


def test_cocharacter_brute_force():
    hits = [t for t in itertools.product(range(-4, 5), repeat=4)
            if all(sum(a * b for a, b in zip(r, t)) == 2 for r in E_ROOTS)]
    assert hits == [(2, 2, 0, 2)]


def test_single_root_underdetermined():
    sol = derive_cocharacter([(1, 0, 0, 0)], 2)
    assert not sol.unique and sol.cocharacter is None and len(sol.nullspace) == 3


def test_tau_tables(tau_grading, L_tau, f4_datum):
    tau = Cocharacter((2, 2, 0, 2))
    # oracle: count roots by degree directly
    counts = {}
    for r in f4_datum.positive_roots:
        for d in (tau.degree(r), -tau.degree(r)):
            counts[d] = counts.get(d, 0) + 1
    counts[0] = counts.get(0, 0) + 4
    assert tau_grading.dims() == dict(sorted(counts.items()))
    assert list(L_tau.dims().items()) == [(-14, 1), (-12, 1), (-10, 3), (-8, 3), (-6, 3),
                                          (-4, 3), (-2, 3), (0, 3), (2, 3), (4, 2), (6, 1)]
    assert not L_tau.axiom_failures()
    assert "deg |" in L_tau.table()


def test_degree_of(tau_grading, e, g):
    assert tau_grading.degree_of(e) == 2
    assert tau_grading.degree_of(g.zero()) is None
    mixed = g.element([(1, "e_1000"), (1, "f_1000")])
    assert tau_grading.degree_of(mixed) is None


def test_not_homogeneous(tau_grading, g):
    sub = span([g.element([(1, "e_1000"), (1, "e_0010")])], 52, 3)
    with pytest.raises(NotHomogeneousError):
        tau_grading.restrict(sub)


def test_v_decomposition(vdec, g):
    assert vdec.kernel_dim == 1 and vdec.V.dim == 8
    assert vdec.direct and vdec.spans_L and vdec.w_invariant and vdec.VV_equals_W


def test_v_tau_table(regraded):
    assert regraded.V_tau.dims() == {d: 1 for d in range(-10, 5, 2)}
    assert set(regraded.V_tau.degrees) <= set(REGRADING_TABLE)


def test_regrade(regraded):
    assert regraded.L.profile() == [3, 6, 9, 6, 2]
    assert regraded.L.depth == 1 and not regraded.L.axiom_failures()
    assert regraded.W.profile() == [2, 4, 6, 4, 2]
    assert regraded.V.total_dim == 8


def test_regrade_missing_entry(g, vdec, W, L_tau):
    table = dict(REGRADING_TABLE)
    del table[4]
    with pytest.raises(KeyError):
        regrade_by_table(g, vdec.V, W.space, L_tau, table)


def test_regrade_collapsed_table(g, vdec, W, L_tau):
    # sending everything to degree zero still decomposes L, but into one piece
    flat = {k: 0 for k in REGRADING_TABLE}
    try:
        out = regrade_by_table(g, vdec.V, W.space, L_tau, flat)
    except IllDefinedGradingError:
        return
    assert out.L.degrees == [0]


def test_sl2_triples(g):
    A = simple_lie_algebra("A1", 3)
    e, h, f = find_sl2_triple(A)
    assert is_sl2_triple(A, e, h, f)
    abelian = SubalgebraHandle(g, span([g.element([(1, "h_1")]), g.element([(1, "h_2")])], 52, 3))
    assert find_sl2_triple(abelian) is None


def test_sl2_cap(L):
    with pytest.raises(ValueError):
        find_sl2_triple(L)


def test_sign_scan():
    A = simple_lie_algebra("A2", 3)
    terms = [(1, "e_10"), (1, "e_01")]
    first = sign_scan(A, terms, lambda v: True)
    assert first[0] == (1, 1)
    assert sign_scan(A, terms, lambda v: False) is None
    target = A.element([(1, "e_10"), (-1, "e_01")])
    assert sign_scan(A, terms, lambda v: np.array_equal(v, target))[0] == (1, -1)


def test_recognition_L(regraded):
    rep = recognition_certificate(regraded.L, "ermolaev")
    assert rep.all_hold
    assert rep.zero_component["dim"] == 6 and rep.zero_component["radical_dim"] == 3


def test_recognition_W(regraded):
    rep = recognition_certificate(regraded.W, "witt")
    assert rep.all_hold and rep.zero_component["center_dim"] == 1


def test_recognition_er11():
    E = build_ermolaev(1, 1, 3)
    D = derived_subalgebra(E)
    gr = ermolaev_grading(1, 1, 3, E).restrict(D.space)
    assert recognition_certificate(gr, "ermolaev").all_hold


def test_duality(regraded):
    v = duality_check(regraded.L)
    assert (v.dim_bottom, v.dim_top) == (3, 2) and v.dims_differ
    assert not duality_check(regraded.W).dims_differ


def test_duality_toy():
    A = simple_lie_algebra("A1", 3)
    gr = Grading.from_basis_degrees(A, [1, -1, 0])
    v = duality_check(gr)
    assert not v.dims_differ and (v.bottom_degree, v.top_degree) == (-1, 1)
    assert not gr.axiom_failures()


def test_bad_grading_axiom():
    A = simple_lie_algebra("A1", 3)
    gr = Grading.from_basis_degrees(A, [1, 1, 0])
    assert gr.axiom_failures()


def test_is_isomorphism():
    A = simple_lie_algebra("A1", 3)
    eye = np.eye(3, dtype=np.int64)
    assert is_isomorphism(A, A, eye)
    # Chevalley involution e -> -f, f -> -e, h -> -h
    theta = np.array([[0, -1, 0], [-1, 0, 0], [0, 0, -1]])
    assert is_isomorphism(A, A, theta)
    assert not is_isomorphism(A, A, 2 * eye)  # scaling by 2 does not preserve brackets
    assert not is_isomorphism(A, A, np.zeros((3, 3)))


@settings(max_examples=25, deadline=None)
@given(st.tuples(*[st.integers(-3, 3)] * 4))
def test_any_cocharacter_grades_f4(g, f4_datum, weights):
    gr = cocharacter_grading(g, f4_datum, Cocharacter(weights))
    assert gr.total_dim == 52 and gr.is_direct()
    assert not gr.axiom_failures()
