"""Matrix representations over GF(p): spinning, MeatAxe irreducibility tests,
module homomorphisms and invariant bilinear forms."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import sympy

from .ffalg import (EchelonBasis, PrimeField, Subspace, independent_rows, kernel,
                    matmul_mod, matrix_inverse, projective_points)
from .liecore import LieAlgebra, SubalgebraHandle, as_handle


class MeatAxeError(RuntimeError):
    """No decisive Norton element was found within the search budget."""


@dataclass
class MatrixRepresentation:
    """Action of a list of generators on GF(p)^degree (column vectors)."""

    matrices: np.ndarray
    p: int
    labels: list = field(default_factory=list)

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=np.int64)
        if m.ndim == 2:
            m = m.reshape(1, *m.shape)
        if m.ndim != 3 or m.shape[1] != m.shape[2]:
            raise ValueError("generators must be square matrices of one size")
        self.matrices = m % self.p

    @property
    def degree(self) -> int:
        return self.matrices.shape[1]

    @property
    def ngens(self) -> int:
        return self.matrices.shape[0]

    def transposed(self) -> "MatrixRepresentation":
        return MatrixRepresentation(self.matrices.transpose(0, 2, 1).copy(), self.p)

    def dual(self) -> "MatrixRepresentation":
        """Contragredient module of a Lie algebra representation: x -> -x^T."""
        return MatrixRepresentation((-self.matrices.transpose(0, 2, 1)) % self.p, self.p)

    def is_invariant(self, sub: Subspace) -> bool:
        if sub.dim == 0:
            return True
        imgs = np.einsum("aij,kj->aki", self.matrices, sub.basis).reshape(-1, self.degree)
        return not np.any(sub.reduce(imgs % self.p))

    def restrict(self, sub: Subspace) -> "MatrixRepresentation":
        """Action on an invariant subspace, in its canonical coordinates."""
        B = sub.basis
        imgs = np.einsum("aij,kj->aki", self.matrices, B) % self.p  # (gens, k, degree)
        return MatrixRepresentation(imgs[:, :, sub.pivots].transpose(0, 2, 1).copy(), self.p)

    def quotient(self, sub: Subspace) -> "MatrixRepresentation":
        cols = sub.complement_columns()
        out = []
        for g in self.matrices:
            imgs = g[:, cols].T  # images of complement basis vectors, as rows
            out.append(sub.reduce(imgs)[:, cols].T)
        return MatrixRepresentation(np.array(out).reshape(self.ngens, len(cols), len(cols)), self.p)


def adjoint_representation(s: Union[LieAlgebra, SubalgebraHandle]) -> MatrixRepresentation:
    """ad(b_i) restricted to s, one matrix per canonical basis vector of s."""
    A = as_handle(s).algebra
    return MatrixRepresentation(A.table.transpose(0, 2, 1).copy(), A.p, list(A.labels))


def spin(rep: MatrixRepresentation, v) -> Subspace:
    """Smallest invariant subspace containing the vectors ``v``."""
    d, p = rep.degree, rep.p
    eb = EchelonBasis(d, p)
    frontier = eb.add(np.atleast_2d(np.asarray(v, dtype=np.int64)) % p)
    G = rep.matrices
    while frontier.shape[0] and eb.rank < d:
        imgs = np.einsum("aij,kj->aki", G, frontier).reshape(-1, d) % p
        frontier = eb.add(imgs)
    return eb.subspace()


def spin_words(rep: MatrixRepresentation, v) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Spin with provenance: row k of the result is g_a @ row j for (a, j) = words[k].

    Row 0 is ``v`` itself with word (-1, -1).
    """
    d, p = rep.degree, rep.p
    v = np.asarray(v, dtype=np.int64) % p
    rows = [v]
    words = [(-1, -1)]
    eb = EchelonBasis(d, p)
    eb.add(v)
    q = 0
    while q < len(rows) and eb.rank < d:
        imgs = (rep.matrices @ rows[q]) % p  # (gens, d)
        res = eb.reduce(imgs)
        for a in independent_rows(res, p):
            if not np.any(res[a]):
                continue
            rows.append(imgs[a])
            words.append((a, q))
            eb.add(imgs[a])
        q += 1
    return np.array(rows), words


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    witness: Optional[Subspace] = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.irreducible


MAX_KERNEL_POINTS = 40
RANDOM_TRIES = 200
BRUTE_FORCE_DEGREE = 10


def _random_theta(rep: MatrixRepresentation, rng: np.random.Generator) -> tuple[np.ndarray, list]:
    d, p = rep.degree, rep.p
    theta = np.zeros((d, d), dtype=np.int64)
    recipe = []
    if rep.ngens == 0:
        return theta, recipe
    for _ in range(int(rng.integers(1, 4))):
        length = int(rng.integers(1, 4))
        word = [int(a) for a in rng.integers(0, rep.ngens, size=length)]
        c = int(rng.integers(1, p))
        W = np.eye(d, dtype=np.int64)
        for a in word:
            W = matmul_mod(W, rep.matrices[a], p)
        theta = (theta + c * W) % p
        recipe.append((c, word))
    return theta, recipe


def _norton(rep: MatrixRepresentation, M: np.ndarray, K: Subspace, max_points: int):
    """Decide irreducibility from a singular algebra element M with kernel K.

    Returns a verdict, or None when the kernel is too large to enumerate.
    """
    d, p = rep.degree, rep.p
    first = spin(rep, K.basis[0])
    if first.dim < d:
        return IrreducibilityVerdict(False, first, {"method": "kernel-spin"})
    npoints = (p ** K.dim - 1) // (p - 1)
    if npoints > max_points:
        return None
    for c in projective_points(K.dim, p):
        v = matmul_mod(c.reshape(1, -1), K.basis, p)[0]
        S = spin(rep, v)
        if S.dim < d:
            return IrreducibilityVerdict(False, S, {"method": "kernel-spin"})
    Kt = kernel(M.T, p)
    dual_span = spin(rep.transposed(), Kt.basis[0])
    if dual_span.dim < d:
        # annihilator of a proper dual submodule is a proper submodule
        U = kernel(dual_span.basis, p)
        return IrreducibilityVerdict(False, U, {"method": "dual-kernel-spin"})
    return IrreducibilityVerdict(True, None, {
        "method": "norton", "kernel_dim": K.dim, "kernel_points": npoints,
        "kernel_basis": K.basis.tolist(), "dual_vector": Kt.basis[0].tolist()})


def _random_algebra_element(rep: MatrixRepresentation, rng: np.random.Generator) -> tuple[np.ndarray, list]:
    """A + B C for random linear combinations A, B, C of the generators."""
    d, p = rep.degree, rep.p
    coeffs = [[int(c) for c in rng.integers(0, p, size=rep.ngens)] for _ in range(3)]
    A, B, C = (sum((c * g for c, g in zip(cs, rep.matrices)), np.zeros((d, d), dtype=np.int64)) % p
               for cs in coeffs)
    return (A + matmul_mod(B, C, p)) % p, coeffs


def _krylov_polynomial(M: np.ndarray, v: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of v under M, coefficients highest degree first."""
    d = M.shape[0]
    # track each reduced Krylov vector as a combination of v, Mv, M^2 v, ...
    rows, combos = [], []
    w = v % p
    k = 0
    while True:
        r = w.copy()
        comb = np.zeros(d + 1, dtype=np.int64)
        comb[k] = 1
        for (piv, row), c in zip(rows, combos):
            a = r[piv]
            if a:
                r = (r - a * row) % p
                comb = (comb - a * c) % p
        nz = np.flatnonzero(r)
        if nz.size == 0:
            # comb . (v, Mv, ...) = 0 with comb[k] = 1
            return [int(c) for c in comb[:k + 1][::-1]]
        inv = PrimeField(p).inverse(int(r[nz[0]]))
        rows.append((int(nz[0]), (r * inv) % p))
        combos.append((comb * inv) % p)
        w = (M @ w) % p
        k += 1


def _poly_factors(coeffs: list[int], p: int) -> list[list[int]]:
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(coeffs, x, modulus=p).factor_list()
    out = []
    for f, _ in factors:
        c = [int(a) % p for a in f.all_coeffs()]
        inv = PrimeField(p).inverse(c[0])
        out.append([(a * inv) % p for a in c])
    return sorted(out, key=len)


def _poly_eval(coeffs: list[int], M: np.ndarray, p: int) -> np.ndarray:
    d = M.shape[0]
    R = np.zeros((d, d), dtype=np.int64)
    for c in coeffs:
        R = (matmul_mod(R, M, p) + c * np.eye(d, dtype=np.int64)) % p
    return R


def _factor_test(rep: MatrixRepresentation, theta: np.ndarray, rng: np.random.Generator):
    """Holt-Rees step: a verdict when some factor q has nullity(q(theta)) = deg q."""
    d, p = rep.degree, rep.p
    v = rng.integers(0, p, size=d)
    if not v.any():
        v[0] = 1
    for q in _poly_factors(_krylov_polynomial(theta, v, p), p):
        deg = len(q) - 1
        if deg == 0:
            continue
        Q = _poly_eval(q, theta, p)
        K = kernel(Q, p)
        if K.dim != deg:
            continue
        # the kernel is then an irreducible F[theta]-module: one vector per side decides
        S = spin(rep, K.basis[0])
        if S.dim < d:
            return IrreducibilityVerdict(False, S, {"method": "kernel-spin"})
        Kt = kernel(Q.T, p)
        dual_span = spin(rep.transposed(), Kt.basis[0])
        if dual_span.dim < d:
            U = kernel(dual_span.basis, p)
            return IrreducibilityVerdict(False, U, {"method": "dual-kernel-spin"})
        return IrreducibilityVerdict(True, None, {
            "method": "holt-rees", "factor": q, "kernel_vector": K.basis[0].tolist(),
            "dual_vector": Kt.basis[0].tolist()})
    return None


def is_irreducible(rep: MatrixRepresentation, seed: int = 0) -> IrreducibilityVerdict:
    d, p = rep.degree, rep.p
    if d == 0:
        raise ValueError("the zero module has no irreducibility verdict")
    if d == 1:
        return IrreducibilityVerdict(True, None, {"method": "degree-one"})
    rng = np.random.default_rng(seed)
    eye = np.eye(d, dtype=np.int64)
    for attempt in range(RANDOM_TRIES):
        if rep.ngens:
            theta, recipe = _random_algebra_element(rep, rng)
            verdict = _factor_test(rep, theta, rng)
            if verdict is not None:
                verdict.certificate.update(attempt=attempt, theta=recipe)
                return verdict
        theta, recipe = _random_theta(rep, rng)
        for lam in range(p):
            M = (theta - lam * eye) % p
            K = kernel(M, p)
            if K.dim == 0:
                continue
            verdict = _norton(rep, M, K, MAX_KERNEL_POINTS)
            if verdict is not None:
                verdict.certificate.update(attempt=attempt, eigenvalue=lam, theta=recipe)
                return verdict
    # deterministic fallback: kernels of every generator shifted by every scalar
    cands = list(rep.matrices) if rep.ngens else [np.zeros((d, d), dtype=np.int64)]
    for a, g in enumerate(cands):
        for lam in range(p):
            M = (g - lam * eye) % p
            K = kernel(M, p)
            if K.dim == 0:
                continue
            verdict = _norton(rep, M, K, p ** 6)
            if verdict is not None:
                verdict.certificate.update(fallback="generator", generator=a, eigenvalue=lam)
                return verdict
    if d <= BRUTE_FORCE_DEGREE:
        for v in projective_points(d, p):
            S = spin(rep, v)
            if S.dim < d:
                return IrreducibilityVerdict(False, S, {"method": "exhaustive-spin"})
        return IrreducibilityVerdict(True, None, {"method": "exhaustive-spin"})
    raise MeatAxeError(f"no decisive element found for a module of degree {d}")


def hom_space(src: MatrixRepresentation, dst: MatrixRepresentation) -> np.ndarray:
    """Basis of {X : X g_a = h_a X for every generator a}, shape (k, deg dst, deg src).

    Uses a cyclic vector of ``src`` when one is found among the standard basis
    vectors, which reduces the unknowns to the image of that vector.
    """
    if src.ngens != dst.ngens or src.p != dst.p:
        raise ValueError("representations must share generators and field")
    d = src.degree
    for i in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        S, words = spin_words(src, v)
        if S.shape[0] == d:
            return _hom_cyclic(src, dst, S, words)
    return _hom_dense(src, dst)


def _hom_cyclic(src, dst, S, words) -> np.ndarray:
    d, e, p = src.degree, dst.degree, src.p
    H = np.zeros((d, e, e), dtype=np.int64)
    H[0] = np.eye(e, dtype=np.int64)
    for k in range(1, d):
        a, j = words[k]
        H[k] = matmul_mod(dst.matrices[a], H[j], p)
    Sinv = matrix_inverse(S, p)
    eb = EchelonBasis(e, p)
    Hz = H.transpose(1, 0, 2).reshape(e, d * e)
    cand = np.eye(e, dtype=np.int64)  # basis of the solutions so far, as rows
    for a in range(src.ngens):
        coords = matmul_mod(matmul_mod(S, src.matrices[a].T, p), Sinv, p)  # (d, d)
        lhs = matmul_mod(coords, H.reshape(d, e * e), p).reshape(d, e, e)
        rhs = matmul_mod(dst.matrices[a], Hz, p).reshape(e, d, e).transpose(1, 0, 2)
        eqs = ((lhs - rhs) % p).reshape(d * e, e)
        if not matmul_mod(eqs, cand.T, p).any():
            continue
        eb.add(eqs, chunk=4096)
        if eb.rank == e:
            return np.zeros((0, e, d), dtype=np.int64)
        cand = kernel(eb.rows, p).basis
    out = []
    for u in cand:
        Y = np.einsum("kxy,y->kx", H, u) % p  # row k = X s_k
        out.append(matmul_mod(Y.T, Sinv.T, p))
    return np.array(out, dtype=np.int64).reshape(len(out), e, d)


def _hom_dense(src, dst) -> np.ndarray:
    d, e, p = src.degree, dst.degree, src.p
    Id, Ie = np.eye(d, dtype=np.int64), np.eye(e, dtype=np.int64)
    blocks = [(np.kron(g.T, Ie) - np.kron(Id, h)) % p for g, h in zip(src.matrices, dst.matrices)]
    if not blocks:
        blocks = [np.zeros((0, d * e), dtype=np.int64)]
    sols = kernel(np.vstack(blocks), p)
    return np.array([vec.reshape(d, e).T for vec in sols.basis], dtype=np.int64).reshape(-1, e, d)


def commutant(rep: MatrixRepresentation) -> np.ndarray:
    return hom_space(rep, rep)


@dataclass
class AbsoluteIrreducibilityVerdict:
    absolutely_irreducible: bool
    irreducible: bool
    commutant_dim: int

    def __bool__(self) -> bool:
        return self.absolutely_irreducible


def is_absolutely_irreducible(rep: MatrixRepresentation, seed: int = 0) -> AbsoluteIrreducibilityVerdict:
    irr = bool(is_irreducible(rep, seed))
    cdim = commutant(rep).shape[0]
    return AbsoluteIrreducibilityVerdict(irr and cdim == 1, irr, cdim)


SOCLE_DIM_CAP = 12


def socle_minimal_submodule(rep: MatrixRepresentation, seed: int = 0,
                            cap: int = SOCLE_DIM_CAP) -> Subspace:
    """A minimal nonzero invariant subspace, by descending through proper submodules."""
    d, p = rep.degree, rep.p
    if d > cap:
        raise ValueError(f"socle search capped at degree {cap}, got {d}")
    basis = np.eye(d, dtype=np.int64)
    current = rep
    while True:
        verdict = is_irreducible(current, seed)
        if verdict.irreducible:
            return Subspace(basis, d, p)
        W = verdict.witness
        basis = matmul_mod(W.basis, basis, p)
        current = current.restrict(W)


@dataclass
class BilinearForm:
    gram: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def rank(self) -> int:
        from .ffalg import rank
        return rank(self.gram, self.p) if self.dim else 0

    def is_symmetric(self) -> bool:
        return np.array_equal(self.gram % self.p, self.gram.T % self.p)

    def is_nondegenerate(self) -> bool:
        return self.rank == self.dim

    def __call__(self, x, y) -> int:
        return int(np.asarray(x) @ self.gram @ np.asarray(y)) % self.p


def form_invariance_defects(alg: LieAlgebra, B: BilinearForm) -> int:
    """Number of basis triples (x, y, z) with B([x, y], z) != B(x, [y, z])."""
    C = alg.table.astype(np.float64)
    G = B.gram.astype(np.float64)
    left = np.einsum("xyk,kz->xyz", C, G, optimize=True)
    right = np.einsum("xk,yzk->xyz", G, C, optimize=True)
    diff = np.rint(left - right).astype(np.int64) % alg.p
    return int(np.count_nonzero(diff))


def invariant_symmetric_forms(alg: Union[LieAlgebra, SubalgebraHandle]) -> list[BilinearForm]:
    """Basis of the invariant symmetric bilinear forms, as Gram matrices.

    An invariant form is a module map g -> g*, so the forms come out of
    ``hom_space`` into the dual; symmetry is imposed on that small space.
    """
    A = as_handle(alg).algebra
    p, n = A.p, A.dim
    if n == 0:
        return []
    rep = adjoint_representation(A)
    homs = hom_space(rep, rep.dual())
    grams = [X.T % p for X in homs]
    if not grams:
        return []
    skew = np.array([((G - G.T) % p).reshape(-1) for G in grams]).T
    coeffs = kernel(skew, p)
    out = []
    for c in coeffs.basis:
        G = np.tensordot(c, np.array(grams), axes=1) % p
        out.append(BilinearForm(G.astype(np.int64), p))
    grams_space = Subspace(np.array([f.gram.reshape(-1) for f in out]).reshape(len(out), -1),
                           n * n, p) if out else None
    if grams_space is not None:
        out = [BilinearForm(row.reshape(n, n), p) for row in grams_space.basis]
    return out


def restrict_form(B: BilinearForm, s: Union[Subspace, SubalgebraHandle]) -> BilinearForm:
    space = s.space if isinstance(s, SubalgebraHandle) else s
    S = space.basis
    if space.dim == 0:
        return BilinearForm(np.zeros((0, 0), dtype=np.int64), B.p)
    return BilinearForm(matmul_mod(matmul_mod(S, B.gram, B.p), S.T, B.p), B.p)


def is_totally_isotropic(B: BilinearForm, s: Union[Subspace, SubalgebraHandle]) -> bool:
    return not np.any(restrict_form(B, s).gram)
