"""Divided-power algebras O(2; n), Witt algebras W(2; n) and the Ermolaev series.

Monomials x^(a) = x1^(a1) x2^(a2) multiply by
x^(a) x^(b) = C(a1+b1, a1) C(a2+b2, a2) x^(a+b), vanishing on overflow, and
the partial derivatives lower one exponent: d_i x^(a) = x^(a - e_i).

For n = (1, 1) the ordinary monomial x1^a x2^b corresponds to a! b! x^(a, b).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Optional

import numpy as np

from .ffalg import PrimeField, Subspace
from .liecore import LieAlgebra


def _mono_label(a: tuple[int, int]) -> str:
    parts = []
    for i, k in enumerate(a, start=1):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^({k})")
    return "".join(parts) or "1"


class DividedPowerAlgebra:
    """O(2; n) over GF(p) on the monomial basis ordered by total degree."""

    def __init__(self, n1: int, n2: int, p: int):
        PrimeField(p)
        if n1 < 1 or n2 < 1:
            raise ValueError("heights n1, n2 must be positive")
        self.p, self.n = p, (n1, n2)
        top = (p ** n1, p ** n2)
        monos = [(a1, a2) for a1 in range(top[0]) for a2 in range(top[1])]
        monos.sort(key=lambda a: (a[0] + a[1], -a[0]))
        self.monomials: list[tuple[int, int]] = monos
        self.index = {a: i for i, a in enumerate(monos)}
        self.top = top

    @property
    def dim(self) -> int:
        return len(self.monomials)

    @property
    def labels(self) -> list[str]:
        return [_mono_label(a) for a in self.monomials]

    def degree(self, i: int) -> int:
        return sum(self.monomials[i])

    def monomial(self, a1: int, a2: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.index[(a1, a2)]] = 1
        return v

    def one(self) -> np.ndarray:
        return self.monomial(0, 0)

    @cached_property
    def mult_table(self) -> np.ndarray:
        N, p = self.dim, self.p
        P = np.zeros((N, N, N), dtype=np.int64)
        for i, a in enumerate(self.monomials):
            for j, b in enumerate(self.monomials):
                s = (a[0] + b[0], a[1] + b[1])
                if s[0] < self.top[0] and s[1] < self.top[1]:
                    c = comb(s[0], a[0]) * comb(s[1], a[1]) % p
                    if c:
                        P[i, j, self.index[s]] = c
        return P

    @cached_property
    def partials(self) -> np.ndarray:
        """partials[i] is the matrix of d_{i+1} on column vectors."""
        N = self.dim
        D = np.zeros((2, N, N), dtype=np.int64)
        for j, a in enumerate(self.monomials):
            for i in range(2):
                if a[i] > 0:
                    b = list(a)
                    b[i] -= 1
                    D[i, self.index[tuple(b)], j] = 1
        return D

    def product(self, f, g) -> np.ndarray:
        f = np.asarray(f, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        return np.einsum("i,j,ijk->k", f, g, self.mult_table) % self.p

    def partial(self, i: int, f) -> np.ndarray:
        """d_i f for i in {1, 2}."""
        return (self.partials[i - 1] @ np.asarray(f, dtype=np.int64)) % self.p


@dataclass(frozen=True)
class WittDerivation:
    """f1 d1 + f2 d2 with coefficients in a divided-power algebra."""

    f1: np.ndarray
    f2: np.ndarray

    def coeff(self, i: int) -> np.ndarray:
        return self.f1 if i == 1 else self.f2

    def vector(self) -> np.ndarray:
        return np.concatenate([self.f1, self.f2])

    def __eq__(self, other) -> bool:
        return (isinstance(other, WittDerivation) and np.array_equal(self.f1, other.f1)
                and np.array_equal(self.f2, other.f2))

    def is_zero(self) -> bool:
        return not (np.any(self.f1) or np.any(self.f2))


def derivation(O: DividedPowerAlgebra, f1=None, f2=None) -> WittDerivation:
    z = np.zeros(O.dim, dtype=np.int64)
    return WittDerivation(np.asarray(f1 if f1 is not None else z, dtype=np.int64) % O.p,
                          np.asarray(f2 if f2 is not None else z, dtype=np.int64) % O.p)


def apply_derivation(O: DividedPowerAlgebra, D: WittDerivation, g) -> np.ndarray:
    return (O.product(D.f1, O.partial(1, g)) + O.product(D.f2, O.partial(2, g))) % O.p


def divergence(O: DividedPowerAlgebra, D: WittDerivation) -> np.ndarray:
    return (O.partial(1, D.f1) + O.partial(2, D.f2)) % O.p


def witt_bracket(O: DividedPowerAlgebra, D: WittDerivation, E: WittDerivation) -> WittDerivation:
    return WittDerivation(
        (apply_derivation(O, D, E.f1) - apply_derivation(O, E, D.f1)) % O.p,
        (apply_derivation(O, D, E.f2) - apply_derivation(O, E, D.f2)) % O.p)


def twisted_action(O: DividedPowerAlgebra, D: WittDerivation, f, alpha: int) -> np.ndarray:
    """D . f = D(f) + alpha div(D) f."""
    return (apply_derivation(O, D, f) + alpha * O.product(divergence(O, D), f)) % O.p


def o_bracket(O: DividedPowerAlgebra, f, g) -> WittDerivation:
    """[f, g] = (f d2 g - g d2 f) d1 + (g d1 f - f d1 g) d2."""
    prod, d = O.product, O.partial
    return WittDerivation((prod(f, d(2, g)) - prod(g, d(2, f))) % O.p,
                          (prod(g, d(1, f)) - prod(f, d(1, g))) % O.p)


@dataclass
class ErmolaevTable:
    """W(2; n) + O(2; n) with the twisted bracket, before any Lie check."""

    O: DividedPowerAlgebra
    alpha: int
    table: np.ndarray
    labels: list[str]
    degrees: list[int]

    @property
    def p(self) -> int:
        return self.O.p

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def witt_dim(self) -> int:
        return 2 * self.O.dim

    def witt_index(self, mono: tuple[int, int], i: int) -> int:
        return 2 * self.O.index[mono] + (i - 1)

    def o_index(self, mono: tuple[int, int]) -> int:
        return self.witt_dim + self.O.index[mono]

    def witt_element(self, D: WittDerivation) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0:self.witt_dim:2] = D.f1
        v[1:self.witt_dim:2] = D.f2
        return v % self.p

    def o_element(self, f) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.witt_dim:] = f
        return v % self.p

    def split(self, v) -> tuple[WittDerivation, np.ndarray]:
        v = np.asarray(v, dtype=np.int64)
        return WittDerivation(v[0:self.witt_dim:2].copy(), v[1:self.witt_dim:2].copy()), \
            v[self.witt_dim:].copy()

    def product(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return np.einsum("i,j,ijk->k", x, np.asarray(y, dtype=np.int64), self.table) % self.p

    def witt_space(self) -> Subspace:
        return Subspace(np.eye(self.dim, dtype=np.int64)[:self.witt_dim], self.dim, self.p)


def ermolaev_table(n1: int, n2: int, p: int, alpha: int = 1) -> ErmolaevTable:
    """Structure constants of W(2; n) + O(2; n)_(alpha div) for any prime p.

    Witt-Witt products use the derivation commutator, Witt-O products the
    twisted action, and O-O products land in the Witt part.  Basis: x^(k) d1,
    x^(k) d2 interleaved in monomial order, then the monomials x^(k).
    """
    O = DividedPowerAlgebra(n1, n2, p)
    N = O.dim
    P, D = O.mult_table, O.partials
    # Tp[i][k, l] = x^(k) * d_i x^(l)
    Tp = [np.einsum("ml,kmn->kln", D[i], P) % p for i in range(2)]
    # Dv[i][k, m] = (d_i x^(k)) * x^(m)
    Dv = [np.einsum("rk,rmn->kmn", D[i], P) % p for i in range(2)]
    nw = 2 * N
    dim = nw + N
    T = np.zeros((dim, dim, dim), dtype=np.int64)
    w = lambda i: slice(i, nw, 2)  # d_{i+1} coefficients inside the Witt block
    for i in range(2):
        for j in range(2):
            # [x^k d_i, x^l d_j] = x^k d_i(x^l) d_j - x^l d_j(x^k) d_i
            T[i:nw:2, j:nw:2, w(j)] += Tp[i]
            T[i:nw:2, j:nw:2, w(i)] -= Tp[j].transpose(1, 0, 2)
        act = (Tp[i] + alpha * Dv[i]) % p
        T[i:nw:2, nw:, nw:] = act
        T[nw:, i:nw:2, nw:] = -act.transpose(1, 0, 2)
    # [x^k, x^l] = (x^k d2 x^l - x^l d2 x^k) d1 + (x^l d1 x^k - x^k d1 x^l) d2
    T[nw:, nw:, w(0)] = Tp[1] - Tp[1].transpose(1, 0, 2)
    T[nw:, nw:, w(1)] = Tp[0].transpose(1, 0, 2) - Tp[0]
    labels = []
    degrees = []
    for a in O.monomials:
        mono = _mono_label(a)
        base = "" if mono == "1" else mono
        labels += [f"{base}d1", f"{base}d2"]
        degrees += [sum(a) - 1, sum(a) - 1]
    labels += O.labels
    # O-part monomial of total degree d sits in degree d - 1
    degrees += [sum(a) - 1 for a in O.monomials]
    return ErmolaevTable(O, alpha % p, T % p, labels, degrees)


def build_ermolaev(n1: int, n2: int, p: int = 3, alpha: int = 1, check: bool = True) -> LieAlgebra:
    """Er(n1, n2) as a Lie algebra; raises NotALieAlgebraError away from p = 3."""
    et = ermolaev_table(n1, n2, p, alpha)
    return LieAlgebra(et.table, p, et.labels, check=check, name=f"Er({n1},{n2})/GF({p})")


def twisted_module_matrices(O: DividedPowerAlgebra, alpha: int) -> np.ndarray:
    """Matrices of the twisted action of each Witt basis derivation on O."""
    N = O.dim
    eye = np.eye(N, dtype=np.int64)
    mats = []
    for k in range(N):
        for D in (derivation(O, f1=eye[k]), derivation(O, f2=eye[k])):
            mats.append(np.array([twisted_action(O, D, eye[j], alpha) for j in range(N)]).T)
    return np.array(mats)


def o_prime_submodule(n1: int, n2: int, p: int = 3, alpha: int = 1) -> Subspace:
    """The W-submodule of O(2; n)_(alpha div) generated by 1."""
    from .modrep import MatrixRepresentation, spin

    et = ermolaev_table(n1, n2, p, alpha)
    nw = et.witt_dim
    # column j of the matrix for Witt basis vector b is b . x^(j)
    rep = MatrixRepresentation(et.table[:nw, nw:, nw:].transpose(0, 2, 1), p)
    return spin(rep, et.O.one())


def ermolaev_grading(n1: int, n2: int, p: int = 3, alg: Optional[LieAlgebra] = None):
    """The standard grading of Er(n1, n2) as a ``Grading`` on the full algebra."""
    from .grading import Grading

    et = ermolaev_table(n1, n2, p)
    if alg is None:
        alg = LieAlgebra(et.table, p, et.labels, check=False, name=f"Er({n1},{n2})/GF({p})")
    return Grading.from_basis_degrees(alg, et.degrees)


@dataclass
class JacobiDefect:
    p: int
    value: np.ndarray
    formatted: str
    euler_multiple: Optional[int]

    @property
    def is_zero(self) -> bool:
        return not np.any(self.value)


def jacobi_defect(p: int, alpha: int = 1, n1: int = 1, n2: int = 1) -> JacobiDefect:
    """J(x1 d1, x1, x2) in W(2;n) + O(2;n)_(alpha div) over GF(p).

    J(x, y, z) = [[x, y], z] + [[y, z], x] + [[z, x], y], the left-normed
    cyclic sum; the right-normed sum is its negative.
    """
    et = ermolaev_table(n1, n2, p, alpha)
    O = et.O
    x1d1 = et.witt_element(derivation(O, f1=O.monomial(1, 0)))
    x1 = et.o_element(O.monomial(1, 0))
    x2 = et.o_element(O.monomial(0, 1))
    br = et.product
    J = (br(br(x1d1, x1), x2) + br(br(x1, x2), x1d1) + br(br(x2, x1d1), x1)) % p
    euler = (et.witt_element(derivation(O, f1=O.monomial(1, 0)))
             + et.witt_element(derivation(O, f2=O.monomial(0, 1)))) % p
    multiple = None
    for c in range(p):
        if np.array_equal(J, (c * euler) % p):
            multiple = c
            break
    alg = LieAlgebra(et.table, p, et.labels, check=False)
    return JacobiDefect(p, J, alg.format(J), multiple)
