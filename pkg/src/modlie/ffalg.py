"""Dense exact linear algebra over prime fields GF(p).

Matrices are plain numpy ``int64`` arrays holding least nonnegative
residues.  Subspaces are stored in reduced row-echelon form, which makes
equality a direct array comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_PRIME = 251


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p) for a prime 2 <= p <= 251."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"modulus must be an integer in [2, {MAX_PRIME}], got {self.p!r}")
        if not is_prime(int(self.p)):
            raise ValueError(f"modulus {self.p} is not prime")

    def __len__(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.p)

    def reduce(self, a) -> int:
        return int(a) % self.p

    def inverse(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def signed(self, a: int) -> int:
        """Residue in the symmetric range (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def matrix(self, rows) -> np.ndarray:
        return as_matrix(rows, self.p)


def as_matrix(rows, p: int, ncols: Optional[int] = None) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(0, ncols or 0) if m.size == 0 else m.reshape(1, -1)
    return m % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two residue matrices, reduced mod p.

    BLAS in float64 is exact while the inner dimension times (p-1)^2 stays
    below 2**53, which holds by a wide margin at the sizes used here.
    """
    if a.shape[-1] * (p - 1) ** 2 < 2**52:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.rint(out).astype(np.int64) % p
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)).astype(np.int64) % p


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


_INV_CACHE: dict[int, np.ndarray] = {}


def _inv(p: int) -> np.ndarray:
    if p not in _INV_CACHE:
        _INV_CACHE[p] = _inverse_table(p)
    return _INV_CACHE[p]


def _rref_small(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivots)."""
    inv = _inv(p)
    nrows, ncols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r, c:] = (a[r, c:] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            a[idx, c:] = (a[idx, c:] - np.outer(col[idx], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a row space.

    ``add`` reduces a batch of vectors against the current basis with one
    matrix product and only runs elimination on the residue, so tall inputs
    are cheap as long as the final rank is small.
    """

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64) % self.p
        if self.pivots and vecs.size:
            vecs = (vecs - matmul_mod(vecs[:, self.pivots], self.rows, self.p)) % self.p
        return vecs

    def add(self, vecs, chunk: Optional[int] = None) -> np.ndarray:
        """Add vectors; return the RREF rows of the newly gained directions."""
        vecs = np.asarray(vecs, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs.reshape(1, -1)
        if chunk is None:
            chunk = max(64, 2 * self.ncols)
        gained = []
        for start in range(0, vecs.shape[0], chunk):
            if self.rank == self.ncols:
                break
            res = self.reduce(vecs[start:start + chunk])
            res = res[np.any(res, axis=1)]
            if res.shape[0] == 0:
                continue
            new, newpiv = _rref_small(res.copy(), self.p)
            if not newpiv:
                continue
            if self.pivots:
                self.rows = (self.rows - matmul_mod(self.rows[:, newpiv], new, self.p)) % self.p
            allrows = np.vstack([self.rows, new])
            allpiv = self.pivots + newpiv
            order = np.argsort(allpiv, kind="stable")
            self.rows = allrows[order]
            self.pivots = [allpiv[i] for i in order]
            gained.append(new)
        if not gained:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.vstack(gained)

    def contains(self, v) -> bool:
        return not np.any(self.reduce(np.atleast_2d(v)))

    def subspace(self) -> "Subspace":
        return Subspace._from_rref(self.rows.copy(), list(self.pivots), self.ncols, self.p)


def rref(m, p: int) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form of ``m`` (same shape, zero rows last) and its rank."""
    m = np.asarray(m, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    nrows, ncols = m.shape
    if nrows > 2 * max(ncols, 1):
        eb = EchelonBasis(ncols, p)
        eb.add(m)
        rows, rank = eb.rows, eb.rank
    else:
        rows, piv = _rref_small(m.copy(), p)
        rank = len(piv)
    out = np.zeros((nrows, ncols), dtype=np.int64)
    out[:rank] = rows
    return out, rank


def rank(m, p: int) -> int:
    return rref(m, p)[1]


def pivot_columns(r: np.ndarray) -> list[int]:
    piv = []
    for row in r:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        piv.append(int(nz[0]))
    return piv


def independent_rows(m, p: int) -> list[int]:
    """Indices of the rows of ``m`` that are independent of the rows before them."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return []
    r, _ = rref(m.T, p)
    return pivot_columns(r)


class Subspace:
    """A subspace of GF(p)^n with a canonical reduced row-echelon basis."""

    __slots__ = ("basis", "pivots", "ambient_dim", "p")

    def __init__(self, vectors, ambient_dim: int, p: int):
        m = np.asarray(vectors, dtype=np.int64)
        if m.size == 0:
            m = np.zeros((0, ambient_dim), dtype=np.int64)
        m = (m.reshape(-1, ambient_dim) if ambient_dim else m.reshape(0, 0)) % p
        eb = EchelonBasis(ambient_dim, p)
        eb.add(m)
        self.basis = eb.rows
        self.pivots = list(eb.pivots)
        self.ambient_dim = ambient_dim
        self.p = p
        self.basis.flags.writeable = False

    @classmethod
    def _from_rref(cls, rows, pivots, ambient_dim, p) -> "Subspace":
        obj = cls.__new__(cls)
        obj.basis = rows
        obj.pivots = pivots
        obj.ambient_dim = ambient_dim
        obj.p = p
        obj.basis.flags.writeable = False
        return obj

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls(np.zeros((0, n), dtype=np.int64), n, p)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.int64), n, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"

    def echelon(self) -> EchelonBasis:
        eb = EchelonBasis(self.ambient_dim, self.p)
        eb.rows = self.basis.copy()
        eb.pivots = list(self.pivots)
        return eb

    def reduce(self, vecs) -> np.ndarray:
        """Residues of ``vecs`` modulo the subspace (zero iff contained)."""
        vecs = np.atleast_2d(np.asarray(vecs, dtype=np.int64)) % self.p
        if self.dim == 0:
            return vecs
        return (vecs - matmul_mod(vecs[:, self.pivots], self.basis, self.p)) % self.p

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return other.dim == 0 or not np.any(self.reduce(other.basis))

    def coordinates(self, vecs) -> np.ndarray:
        """Coordinates of member vectors in the canonical basis."""
        vecs = np.atleast_2d(np.asarray(vecs, dtype=np.int64)) % self.p
        if np.any(self.reduce(vecs)):
            raise ValueError("vector not in subspace")
        return vecs[:, self.pivots]

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def quotient_coordinates(self, vecs) -> np.ndarray:
        """Coordinates of the images of ``vecs`` in ambient/self, on the non-pivot columns."""
        return self.reduce(vecs)[:, self.complement_columns()]


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise ValueError(
            f"ambient mismatch: GF({a.p})^{a.ambient_dim} vs GF({b.p})^{b.ambient_dim}")


def kernel(m, p: int) -> Subspace:
    """Right null space {x : m x = 0}."""
    m = np.asarray(m, dtype=np.int64) % p
    ncols = m.shape[1]
    r, rk = rref(m, p)
    piv = pivot_columns(r[:rk])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = (-r[row, f]) % p
    return Subspace(basis, ncols, p)


def left_kernel(m, p: int) -> Subspace:
    return kernel(np.asarray(m).T, p)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    eb = a.echelon()
    eb.add(b.basis)
    return eb.subspace()


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, a.p)
    # x A = y B  <=>  (x, -y) [A; B] = 0
    stacked = np.vstack([a.basis, (-b.basis) % a.p])
    k = left_kernel(stacked, a.p)
    if k.dim == 0:
        return Subspace.zero(a.ambient_dim, a.p)
    vecs = matmul_mod(k.basis[:, :a.dim], a.basis, a.p)
    return Subspace(vecs, a.ambient_dim, a.p)


def span(vectors: Iterable, ambient_dim: int, p: int) -> Subspace:
    vecs = [np.asarray(v, dtype=np.int64) for v in vectors]
    if not vecs:
        return Subspace.zero(ambient_dim, p)
    return Subspace(np.vstack(vecs), ambient_dim, p)


@dataclass(frozen=True)
class AffineSubspace:
    """The coset ``point + direction``."""

    point: np.ndarray
    direction: Subspace

    @property
    def dim(self) -> int:
        return self.direction.dim

    def contains(self, v) -> bool:
        return self.direction.contains((np.asarray(v) - self.point) % self.direction.p)


def solve_simultaneous(constraints: Sequence[tuple], ambient_dim: int, p: int) -> Optional[AffineSubspace]:
    """Solve the stacked system M_1 x = r_1, ..., M_k x = r_k.

    Returns ``None`` when the system is inconsistent.
    """
    if not constraints:
        return AffineSubspace(np.zeros(ambient_dim, dtype=np.int64), Subspace.full(ambient_dim, p))
    mats, rhss = [], []
    for m, r in constraints:
        m = np.atleast_2d(np.asarray(m, dtype=np.int64))
        r = np.asarray(r, dtype=np.int64).reshape(-1)
        if m.shape[1] != ambient_dim or m.shape[0] != r.shape[0]:
            raise ValueError("constraint shape mismatch")
        mats.append(m)
        rhss.append(r)
    m = np.vstack(mats) % p
    rhs = np.concatenate(rhss) % p
    aug = np.hstack([m, rhs.reshape(-1, 1)])
    r, rk = rref(aug, p)
    piv = pivot_columns(r[:rk])
    if piv and piv[-1] == ambient_dim:
        return None
    point = np.zeros(ambient_dim, dtype=np.int64)
    for row, pc in enumerate(piv):
        point[pc] = r[row, ambient_dim]
    return AffineSubspace(point, kernel(m, p))


def matrix_inverse(m, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix required")
    r, rk = rref(np.hstack([m, np.eye(n, dtype=np.int64)]), p)
    if pivot_columns(r[:n]) != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:n, n:]


def projective_points(dim: int, p: int, cap: Optional[int] = None):
    """Yield one representative (leading entry 1) of each line in GF(p)^dim."""
    count = (p**dim - 1) // (p - 1) if dim else 0
    if cap is not None and count > cap:
        raise ValueError(f"{count} projective points exceed the enumeration cap {cap}")
    for lead in range(dim):
        tail = dim - lead - 1
        for idx in range(p**tail):
            v = np.zeros(dim, dtype=np.int64)
            v[lead] = 1
            x = idx
            for j in range(dim - 1, lead, -1):
                v[j] = x % p
                x //= p
            yield v


def all_vectors(dim: int, p: int) -> np.ndarray:
    """Every vector of GF(p)^dim as rows (p**dim of them)."""
    grids = np.indices((p,) * dim).reshape(dim, -1).T
    return grids.astype(np.int64)
