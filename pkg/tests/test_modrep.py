import numpy as np
import pytest

from modlie.ffalg import Subspace, matmul_mod, matrix_inverse
from modlie.modrep import (BilinearForm, MatrixRepresentation, adjoint_representation, commutant,
                           form_invariance_defects, hom_space, invariant_symmetric_forms,
                           is_absolutely_irreducible, is_irreducible, is_totally_isotropic,
                           restrict_form, socle_minimal_submodule, spin)
from modlie.rootdata import simple_lie_algebra

from oracles import MODULES, brute_irreducible, random_invertible


def test_corpus_is_mixed():
    verdicts = [brute_irreducible(r) for r in MODULES]
    assert len(MODULES) >= 50 and 5 <= sum(verdicts) <= len(verdicts) - 5


@pytest.mark.parametrize("idx", range(len(MODULES)))
def test_meataxe_matches_exhaustive_spin(idx):
    rep = MODULES[idx]
    verdict = is_irreducible(rep, seed=idx)
    assert verdict.irreducible == brute_irreducible(rep)
    if not verdict.irreducible:
        W = verdict.witness
        assert 0 < W.dim < rep.degree and rep.is_invariant(W)


def test_rotation_not_absolutely_irreducible():
    rep = MatrixRepresentation(np.array([[0, -1], [1, 0]]), 3)
    assert is_irreducible(rep)
    abs_v = is_absolutely_irreducible(rep)
    assert abs_v.irreducible and not abs_v.absolutely_irreducible and abs_v.commutant_dim == 2


def test_diagonal_reducible():
    rep = MatrixRepresentation(np.diag([1, 2]), 3)
    v = is_irreducible(rep)
    assert not v and v.witness.dim == 1


def test_spin_examples():
    rep = MatrixRepresentation(np.array([[0, 0], [1, 0]]), 3)
    assert spin(rep, [1, 0]).dim == 2
    assert spin(rep, [0, 1]).dim == 1
    assert spin(rep, [0, 0]).dim == 0


def test_spin_is_smallest_invariant():
    rng = np.random.default_rng(4)
    for rep in MODULES[:15]:
        v = rng.integers(0, 3, size=rep.degree)
        S = spin(rep, v)
        assert rep.is_invariant(S) and (S.contains(v))


def test_commutant_contract():
    for rep in MODULES[:20]:
        C = commutant(rep)
        assert C.shape[0] >= 1
        for X in C:
            for g in rep.matrices:
                assert np.array_equal(matmul_mod(X, g, 3), matmul_mod(g, X, 3))


def test_hom_space_between_conjugates():
    rng = np.random.default_rng(8)
    rep = MODULES[1]
    S = random_invertible(rng, rep.degree, 3)
    Si = matrix_inverse(S, 3)
    other = MatrixRepresentation(np.array([matmul_mod(matmul_mod(S, g, 3), Si, 3)
                                           for g in rep.matrices]), 3)
    H = hom_space(rep, other)
    assert H.shape[0] == commutant(rep).shape[0]


def test_socle():
    rep = MatrixRepresentation(np.array([[1, 1], [0, 1]]), 3)
    S = socle_minimal_submodule(rep)
    assert S.dim == 1 and rep.is_invariant(S)
    for r in MODULES[:20]:
        S = socle_minimal_submodule(r)
        assert r.is_invariant(S) and brute_irreducible(r.restrict(S))


def test_zero_module_rejected():
    with pytest.raises(ValueError):
        is_irreducible(MatrixRepresentation(np.zeros((1, 0, 0)), 3))


def test_adjoint_is_homomorphism(g):
    rep = adjoint_representation(g)
    rng = np.random.default_rng(1)
    for _ in range(5):
        x, y = rng.integers(0, 3, size=(2, 52))
        lhs = g.ad(g.bracket(x, y))
        X, Y = g.ad(x), g.ad(y)
        assert np.array_equal(lhs, (matmul_mod(X, Y, 3) - matmul_mod(Y, X, 3)) % 3)
    assert rep.degree == 52 and rep.ngens == 52


def test_f4_adjoint_absolutely_irreducible(g):
    assert is_absolutely_irreducible(adjoint_representation(g))


def test_forms_sl2():
    A = simple_lie_algebra("A1", 3)
    forms = invariant_symmetric_forms(A)
    assert len(forms) == 1 and forms[0].is_nondegenerate()


def test_killing_form_oracle(g, f4_basis):
    """The integral trace form of ad, divided by its content, spans the invariant forms mod 3."""
    C = f4_basis.table.astype(np.int64)
    K = np.einsum("ikl,jlk->ij", C, C)
    content = int(np.gcd.reduce(K.reshape(-1)))
    assert content == 18
    oracle = (K // content) % 3
    forms = invariant_symmetric_forms(g)
    assert len(forms) == 1
    G = forms[0].gram % 3
    assert any(np.array_equal(G, (c * oracle) % 3) for c in (1, 2))
    assert form_invariance_defects(g, forms[0]) == 0
    assert forms[0].is_symmetric() and forms[0].is_nondegenerate()


def test_form_restriction(g, L, W):
    B = invariant_symmetric_forms(g)[0]
    assert restrict_form(B, W).dim == 18
    assert is_totally_isotropic(B, Subspace.zero(52, 3))
    e1 = Subspace(g.element([(1, "e_1000")]), 52, 3)
    assert is_totally_isotropic(B, e1)


def test_form_call():
    B = BilinearForm(np.array([[0, 1], [1, 0]]), 3)
    assert B([1, 0], [0, 1]) == 1 and B([1, 0], [1, 0]) == 0
    assert B.rank == 2 and B.is_symmetric()
