"""Lie algebras over GF(p) given by structure constants, and their subalgebras."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .ffalg import (EchelonBasis, PrimeField, Subspace, kernel,
                    matmul_mod, projective_points, subspace_sum)
from .tensor import antisymmetry_defect, brackets, jacobi_scan


class NotALieAlgebraError(ValueError):
    """The bracket table fails antisymmetry or the Jacobi identity."""


class LieAlgebra:
    """A finite-dimensional Lie algebra over GF(p).

    ``table[i, j, k]`` is the coefficient of basis vector k in [b_i, b_j].
    Elements are coordinate vectors (numpy int arrays of length ``dim``).
    """

    def __init__(self, table, p: int, labels: Optional[Sequence[str]] = None,
                 check: bool = True, name: str = ""):
        PrimeField(p)
        C = np.asarray(table, dtype=np.int64) % p
        if C.ndim != 3 or C.shape[0] != C.shape[1] or C.shape[1] != C.shape[2]:
            raise ValueError("structure tensor must have shape (n, n, n)")
        self.p = p
        self.table = C
        self.table.flags.writeable = False
        self.dim = C.shape[0]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        if len(self.labels) != self.dim:
            raise ValueError("one label per basis vector required")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.name = name
        if check:
            bad = antisymmetry_defect(C, p)
            if bad is not None:
                raise NotALieAlgebraError(f"bracket not antisymmetric at basis pair {bad}")
            n_bad, witness = jacobi_scan(C, p)
            if n_bad:
                raise NotALieAlgebraError(f"Jacobi identity fails on basis triple {witness[0]}")

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{tag} dim={self.dim} over GF({self.p})>"

    # elements

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def element(self, terms: Iterable[tuple[int, str]]) -> np.ndarray:
        """Coordinate vector of sum(coeff * b_label)."""
        v = self.zero()
        for coeff, label in terms:
            v[self.index(label)] += coeff
        return v % self.p

    def format(self, v) -> str:
        v = np.asarray(v) % self.p
        parts = []
        for i in np.flatnonzero(v):
            c = int(v[i])
            c = c - self.p if c > self.p // 2 else c
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{self.labels[i]}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # products

    def bracket(self, x, y) -> np.ndarray:
        return brackets(self.table, np.asarray(x), np.asarray(y), self.p)[0, 0]

    def brackets(self, X, Y) -> np.ndarray:
        return brackets(self.table, np.asarray(X), np.asarray(Y), self.p)

    def ad(self, x) -> np.ndarray:
        """Matrix of ad x acting on column vectors: ad(x) @ y == [x, y]."""
        x = np.asarray(x, dtype=np.int64)
        return matmul_mod(x.reshape(1, -1), self.table.reshape(self.dim, -1), self.p).reshape(
            self.dim, self.dim).T.copy()

    @cached_property
    def ad_basis(self) -> np.ndarray:
        """ad(b_i) for every basis vector, shape (n, n, n)."""
        return self.table.transpose(0, 2, 1).copy()

    def full_space(self) -> Subspace:
        return Subspace.full(self.dim, self.p)

    def span(self, vectors) -> Subspace:
        vecs = np.asarray(list(vectors), dtype=np.int64).reshape(-1, self.dim)
        return Subspace(vecs, self.dim, self.p)


@dataclass(eq=False)
class SubalgebraHandle:
    """A bracket-closed subspace of a parent algebra."""

    parent: LieAlgebra
    space: Subspace
    name: str = ""

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    @property
    def p(self) -> int:
        return self.parent.p

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<Subalgebra{tag} dim={self.dim} of {self.parent!r}>"

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def coordinates(self, vecs) -> np.ndarray:
        return self.space.coordinates(vecs)

    def lift(self, coords) -> np.ndarray:
        """Parent vectors from coordinates in the canonical basis."""
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        if self.dim == 0:
            return np.zeros((coords.shape[0], self.parent.dim), dtype=np.int64)
        return matmul_mod(coords, self.basis, self.p)

    def lift_space(self, sub: Subspace) -> Subspace:
        return Subspace(self.lift(sub.basis), self.parent.dim, self.p)

    @cached_property
    def algebra(self) -> LieAlgebra:
        """The subalgebra as a standalone algebra in its canonical basis."""
        B = self.basis
        d = self.dim
        if d == 0:
            return LieAlgebra(np.zeros((0, 0, 0), dtype=np.int64), self.p, [], check=False)
        prods = self.parent.brackets(B, B)  # (d, d, n)
        if np.any(self.space.reduce(prods.reshape(d * d, -1))):
            raise ValueError("subspace is not closed under the bracket")
        C = prods[:, :, self.space.pivots]
        labels = [self.parent.format(b) for b in B]
        return LieAlgebra(C, self.p, labels, check=False, name=self.name)

    def is_closed(self) -> bool:
        if self.dim == 0:
            return True
        prods = self.parent.brackets(self.basis, self.basis).reshape(self.dim ** 2, -1)
        return not np.any(self.space.reduce(prods))


Algebraish = Union[LieAlgebra, SubalgebraHandle]


def as_handle(s: Algebraish) -> SubalgebraHandle:
    if isinstance(s, SubalgebraHandle):
        return s
    return SubalgebraHandle(s, s.full_space(), name=s.name)


def bracket(alg: LieAlgebra, x, y) -> np.ndarray:
    return alg.bracket(x, y)


def bracket_span(alg: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """span{[x, y] : x in a, y in b}."""
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(alg.dim, alg.p)
    prods = alg.brackets(a.basis, b.basis).reshape(-1, alg.dim)
    return Subspace(prods, alg.dim, alg.p)


def subalgebra_closure(alg: LieAlgebra, gens, name: str = "") -> SubalgebraHandle:
    """Smallest subalgebra containing ``gens``."""
    gens = np.atleast_2d(np.asarray(gens, dtype=np.int64)) % alg.p
    if gens.shape[0] == 0:
        raise ValueError("at least one generator required")
    eb = EchelonBasis(alg.dim, alg.p)
    frontier = eb.add(gens)
    while frontier.shape[0]:
        prods = alg.brackets(frontier, eb.rows).reshape(-1, alg.dim)
        frontier = eb.add(prods)
    return SubalgebraHandle(alg, eb.subspace(), name=name)


def centralizer_of_element(alg: LieAlgebra, x) -> SubalgebraHandle:
    return SubalgebraHandle(alg, kernel(alg.ad(x), alg.p))


def _quotient_projector(space: Subspace) -> np.ndarray:
    """Matrix Q with Q @ v == coordinates of v + space in ambient/space."""
    n, p = space.ambient_dim, space.p
    R = np.eye(n, dtype=np.int64)
    if space.dim:
        sel = np.zeros((space.dim, n), dtype=np.int64)
        sel[np.arange(space.dim), space.pivots] = 1
        R = (R - matmul_mod(space.basis.T, sel, p)) % p
    return R[space.complement_columns()]


def normalizer(s: Algebraish) -> SubalgebraHandle:
    """{x in parent : [x, s] is contained in s}."""
    s = as_handle(s)
    alg = s.parent
    if s.dim in (0, alg.dim):
        return SubalgebraHandle(alg, alg.full_space())
    Q = _quotient_projector(s.space)
    rows = [matmul_mod(Q, alg.ad(b), alg.p) for b in s.basis]  # x -> [b, x] mod s
    return SubalgebraHandle(alg, kernel(np.vstack(rows), alg.p))


def centralizer_of_subspace(s: Algebraish, sub: Subspace) -> SubalgebraHandle:
    """{x in s : [x, sub] = 0}."""
    s = as_handle(s)
    alg = s.parent
    if sub.dim == 0:
        return s
    # [b_i, y_j] for s-basis b_i; solve sum c_i [b_i, y_j] = 0 for all j
    prods = alg.brackets(s.basis, sub.basis)  # (d, m, n)
    M = prods.reshape(s.dim, -1).T
    ker = kernel(M, alg.p)
    return SubalgebraHandle(alg, s.lift_space(ker) if ker.dim else Subspace.zero(alg.dim, alg.p))


def center(s: Algebraish) -> Subspace:
    s = as_handle(s)
    return centralizer_of_subspace(s, s.space).space


def derived_subalgebra(s: Algebraish) -> SubalgebraHandle:
    s = as_handle(s)
    return SubalgebraHandle(s.parent, bracket_span(s.parent, s.space, s.space))


def derived_series(s: Algebraish) -> list[SubalgebraHandle]:
    s = as_handle(s)
    series = [s]
    while True:
        nxt = derived_subalgebra(series[-1])
        if nxt.space == series[-1].space:
            return series
        series.append(nxt)


def lower_central_series(s: Algebraish) -> list[SubalgebraHandle]:
    s = as_handle(s)
    series = [s]
    while True:
        nxt = SubalgebraHandle(s.parent, bracket_span(s.parent, s.space, series[-1].space))
        if nxt.space == series[-1].space:
            return series
        series.append(nxt)


def is_solvable(s: Algebraish) -> bool:
    return derived_series(s)[-1].dim == 0


def is_nilpotent(s: Algebraish) -> bool:
    return lower_central_series(s)[-1].dim == 0


def is_ideal(s: Algebraish, sub: Subspace) -> bool:
    s = as_handle(s)
    return sub.dim == 0 or sub.contains_space(bracket_span(s.parent, s.space, sub))


def is_abelian(s: Algebraish) -> bool:
    return derived_subalgebra(s).dim == 0


def quotient_algebra(alg: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, np.ndarray]:
    """alg / ideal with its section: row i of the section lifts quotient basis vector i."""
    cols = ideal.complement_columns()
    section = np.zeros((len(cols), alg.dim), dtype=np.int64)
    section[np.arange(len(cols)), cols] = 1
    if cols:
        prods = alg.brackets(section, section).reshape(len(cols) ** 2, -1)
        q = ideal.reduce(prods)[:, cols].reshape(len(cols), len(cols), len(cols))
    else:
        q = np.zeros((0, 0, 0), dtype=np.int64)
    return LieAlgebra(q, alg.p, [alg.labels[c] for c in cols], check=False), section


RADICAL_DIM_CAP = 12


def solvable_radical(s: Algebraish, cap: int = RADICAL_DIM_CAP) -> SubalgebraHandle:
    """Largest solvable ideal of ``s``, by peeling minimal ideals.

    Abelian minimal ideals are quotiented out; a non-abelian minimal ideal
    I meets the radical trivially, so the radical lives in the centralizer
    of I and is the radical of that ideal.
    """
    s = as_handle(s)
    if s.dim > cap:
        raise ValueError(f"radical computation capped at dimension {cap}, got {s.dim}")
    local = _radical_local(s.algebra)
    return SubalgebraHandle(s.parent, s.lift_space(local) if local.dim
                            else Subspace.zero(s.parent.dim, s.p))


def _radical_local(A: LieAlgebra) -> Subspace:
    from .modrep import adjoint_representation, socle_minimal_submodule

    if A.dim == 0:
        return Subspace.zero(0, A.p)
    I = socle_minimal_submodule(adjoint_representation(A))
    if is_abelian(SubalgebraHandle(A, I)):
        Q, section = quotient_algebra(A, I)
        rq = _radical_local(Q)
        lifted = matmul_mod(rq.basis, section, A.p) if rq.dim else np.zeros((0, A.dim), np.int64)
        return subspace_sum(I, Subspace(lifted, A.dim, A.p))
    C = centralizer_of_subspace(A, I)
    if C.dim == 0:
        return Subspace.zero(A.dim, A.p)
    rc = _radical_local(C.algebra)
    return C.lift_space(rc) if rc.dim else Subspace.zero(A.dim, A.p)


def is_ad_nilpotent(alg: LieAlgebra, x) -> tuple[bool, int]:
    """Whether ad x is nilpotent, with the nilpotency index (0 when it is not)."""
    A = alg.ad(x)
    P = np.eye(alg.dim, dtype=np.int64)
    for k in range(1, alg.dim + 1):
        P = matmul_mod(P, A, alg.p)
        if not np.any(P):
            return True, k
    return (True, 1) if alg.dim == 0 else (False, 0)


SCAN_DIM_CAP = 4


def scan_partners(alg: LieAlgebra, e, candidates: Subspace, target_dim: int,
                  cap: int = SCAN_DIM_CAP) -> list[np.ndarray]:
    """Projective representatives v of ``candidates`` with dim <e, v> == target_dim."""
    if candidates.dim > cap:
        raise ValueError(f"candidate space of dimension {candidates.dim} exceeds the cap {cap}")
    hits = []
    for c in projective_points(candidates.dim, alg.p):
        v = matmul_mod(c.reshape(1, -1), candidates.basis, alg.p)[0]
        if subalgebra_closure(alg, np.vstack([e, v])).dim == target_dim:
            hits.append(v)
    return hits


def generating_subset(alg: LieAlgebra) -> list[int]:
    """Greedy choice of basis indices that generate the whole algebra."""
    chosen: list[int] = []
    current = Subspace.zero(alg.dim, alg.p)
    for i in range(alg.dim):
        if current.contains(alg.basis_vector(i)):
            continue
        chosen.append(i)
        current = subalgebra_closure(alg, np.eye(alg.dim, dtype=np.int64)[chosen]).space
        if current.dim == alg.dim:
            break
    return chosen
