import numpy as np
import pytest

from modlie.liecore import NotALieAlgebraError
from modlie.rootdata import (UnsupportedTypeError, build_root_datum, chevalley_structure_constants,
                             dump_structure_constants, element_from_label_sum, integral_checks,
                             reduce_mod_p, simple_lie_algebra)
from modlie.tensor import jacobi_scan

POSITIVE_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6,
                   "F4": 24, "E6": 36}

# a_ij = <alpha_i^vee, alpha_j> with alpha_1, alpha_2 long
F4_CARTAN = np.array([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]])


def _index(cb):
    return {lab: i for i, lab in enumerate(cb.labels)}


def test_a2_roots():
    rd = build_root_datum("A2")
    assert list(rd.positive_roots) == [(1, 0), (0, 1), (1, 1)]


def test_a1_roots():
    assert len(build_root_datum("A1").positive_roots) == 1


def test_f4_roots_and_highest():
    rd = build_root_datum("F4")
    assert len(rd.positive_roots) == 24
    assert rd.highest_root == (2, 3, 4, 2)
    assert set(rd.all_roots) == {tuple(-c for c in r) for r in rd.all_roots}


@pytest.mark.parametrize("label,count", sorted(POSITIVE_COUNTS.items()))
def test_positive_root_counts(label, count):
    rd = build_root_datum(label)
    assert len(rd.positive_roots) == count
    assert chevalley_structure_constants(rd).dim == 2 * count + rd.rank


def test_unsupported_type():
    for bad in ("Q3", "F5", "G3", "E9", "", "A0"):
        with pytest.raises((UnsupportedTypeError, ValueError)):
            build_root_datum(bad)


def test_root_order_heights_ascend():
    rd = build_root_datum("F4")
    heights = [sum(r) for r in rd.positive_roots]
    assert heights == sorted(heights)
    assert rd.positive_roots[:4] == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def test_a1_relations():
    cb = chevalley_structure_constants(build_root_datum("A1"))
    e, f, h = 0, 1, 2
    assert cb.table[e, f, h] == 1
    assert cb.table[h, e, e] == 2
    assert cb.table[h, f, f] == -2


def test_a1_mod_2_kills_h_action():
    A = simple_lie_algebra("A1", 2)
    assert not A.bracket(A.element([(1, "h_1")]), A.element([(1, "e_1")])).any()


def test_a2_chain_lengths():
    cb = chevalley_structure_constants(build_root_datum("A2"))
    ix = _index(cb)
    assert abs(cb.table[ix["e_10"], ix["e_01"], ix["e_11"]]) == 1


@pytest.mark.parametrize("label", ["B2", "G2", "F4"])
def test_structure_constant_magnitudes(label):
    """|N_ab| = r + 1 with r the largest integer such that b - r a is a root; zero off Phi."""
    rd = build_root_datum(label)
    cb = chevalley_structure_constants(rd)
    roots = set(rd.all_roots)
    ix = _index(cb)
    m = len(rd.positive_roots)

    def vec(r):
        from modlie.rootdata import root_label
        if all(c >= 0 for c in r):
            return ix["e_" + root_label(r)]
        return ix["f_" + root_label(tuple(-c for c in r))]

    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if not any(s):
                continue
            coeffs = cb.table[vec(a), vec(b)]
            if s in roots:
                r = 0
                while tuple(y - (r + 1) * x for x, y in zip(a, b)) in roots:
                    r += 1
                assert abs(coeffs[vec(s)]) == r + 1
                assert np.count_nonzero(coeffs) == 1
            else:
                assert not coeffs.any()
    assert m == len(roots) // 2


def test_cartan_action_on_root_vectors():
    rd = build_root_datum("F4")
    cb = chevalley_structure_constants(rd)
    m = len(rd.positive_roots)
    for k, root in enumerate(rd.positive_roots):
        for i in range(4):
            expected = int(sum(F4_CARTAN[i, j] * root[j] for j in range(4)))
            assert cb.table[2 * m + i, k, k] == expected
            assert cb.table[2 * m + i, m + k, m + k] == -expected


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "C3", "G2", "D4", "F4"])
def test_integral_jacobi_and_antisymmetry(label):
    chk = integral_checks(chevalley_structure_constants(build_root_datum(label)))
    assert chk["antisymmetric"] and chk["jacobi_failures"] == 0


def test_f4_mod_p_jacobi(f4_basis):
    for p in (3, 5):
        alg = reduce_mod_p(f4_basis, p)
        assert alg.dim == 52
        assert jacobi_scan(alg.table, p)[0] == 0


def test_negated_constants(f4_basis):
    """N_{-a,-b} = -N_{a,b} in this convention."""
    C = f4_basis.table
    m = 24
    for i in range(m):
        for j in range(m):
            for k in np.flatnonzero(C[i, j, :m]):
                assert C[m + i, m + j, m + k] == -C[i, j, k]


def test_element_from_label_sum(g):
    e = element_from_label_sum(g, [(1, "e_{1000}"), (1, "e_0100"), (1, "e_{0001}"),
                                   (1, "e_0120")])
    assert np.count_nonzero(e) == 4 and set(e[e != 0]) == {1}
    fp = element_from_label_sum(g, [(1, "f_{1222}"), (-1, "f_{1242}")])
    assert np.count_nonzero(fp) == 2 and sorted(fp[fp != 0]) == [1, 2]
    assert not element_from_label_sum(g, []).any()
    with pytest.raises(KeyError):
        element_from_label_sum(g, [(1, "e_9999")])


def test_dump_a1_and_determinism(f4_basis):
    cb = chevalley_structure_constants(build_root_datum("A1"))
    text = dump_structure_constants(cb, 3)
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert len(body) == 3
    assert [ln for ln in text.splitlines() if ln.startswith("# basis")] == ["# basis 3"]
    f4 = dump_structure_constants(f4_basis, 3)
    assert f4 == dump_structure_constants(chevalley_structure_constants(build_root_datum("F4")), 3)
    labels = [ln for ln in f4.splitlines() if ln.startswith("# ") and ln[2].isdigit()]
    assert len(labels) == 52


def test_bad_table_is_refused():
    C = np.zeros((2, 2, 2), dtype=np.int64)
    C[0, 1, 0] = 1
    with pytest.raises(NotALieAlgebraError):
        from modlie.liecore import LieAlgebra
        LieAlgebra(C, 3)
