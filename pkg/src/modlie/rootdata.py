"""Finite root systems in Bourbaki numbering and integral Chevalley bases.

Structure constants follow the extraspecial-pair convention: for every
non-simple positive root xi, the pair (alpha, beta) with alpha + beta = xi
and alpha earliest in the positive-root order gets N_{alpha,beta} = +(r + 1).
All remaining constants are forced by the standard Chevalley relations.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .liecore import LieAlgebra
from .tensor import antisymmetry_defect, jacobi_scan

CONVENTION_VERSION = "extraspecial-positive/v1"

Root = tuple[int, ...]


class UnsupportedTypeError(ValueError):
    pass


def _gram_matrix(family: str, n: int) -> np.ndarray:
    """Twice-scaled symmetric form on simple roots, integer valued."""
    S = np.zeros((n, n), dtype=np.int64)
    if family == "A":
        for i in range(n):
            S[i, i] = 2
        for i in range(n - 1):
            S[i, i + 1] = S[i + 1, i] = -1
    elif family == "B":
        for i in range(n):
            S[i, i] = 4
        S[n - 1, n - 1] = 2
        for i in range(n - 1):
            S[i, i + 1] = S[i + 1, i] = -2
    elif family == "C":
        for i in range(n):
            S[i, i] = 2
        S[n - 1, n - 1] = 4
        for i in range(n - 1):
            S[i, i + 1] = S[i + 1, i] = -1
        S[n - 2, n - 1] = S[n - 1, n - 2] = -2
    elif family == "D":
        for i in range(n):
            S[i, i] = 2
        for i in range(n - 2):
            S[i, i + 1] = S[i + 1, i] = -1
        S[n - 3, n - 1] = S[n - 1, n - 3] = -1
    elif family == "E":
        for i in range(n):
            S[i, i] = 2
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        for i, j in edges:
            S[i, j] = S[j, i] = -1
    elif family == "F":
        S[:] = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif family == "G":
        S[:] = [[2, -3], [-3, 6]]
    return S


_VALID = {
    "A": lambda n: n >= 1, "B": lambda n: n >= 2, "C": lambda n: n >= 3,
    "D": lambda n: n >= 4, "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4, "G": lambda n: n == 2,
}


def parse_type(type_label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", type_label or "")
    if not m:
        raise UnsupportedTypeError(f"cannot parse root system type {type_label!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if not _VALID[family](n):
        raise UnsupportedTypeError(f"unsupported root system type {family}{n}")
    return family, n


def root_label(root: Root) -> str:
    if all(0 <= abs(c) <= 9 for c in root):
        return "".join(str(abs(c)) for c in root)
    return ",".join(str(abs(c)) for c in root)


@dataclass(frozen=True)
class RootDatum:
    type_label: str
    rank: int
    gram: np.ndarray = field(repr=False)
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def cartan_matrix(self) -> np.ndarray:
        """a_ij = <alpha_j, alpha_i^vee>."""
        d = np.diag(self.gram)
        return (2 * self.gram) // d[:, None]

    @property
    def all_roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.all_roots)

    @cached_property
    def positive_index(self) -> dict[Root, int]:
        return {r: i for i, r in enumerate(self.positive_roots)}

    def is_root(self, r: Root) -> bool:
        return tuple(r) in self.root_set

    def inner(self, a: Iterable[int], b: Iterable[int]) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def pairing(self, root: Root, i: int) -> int:
        """<root, alpha_i^vee>."""
        return (2 * self.inner(root, np.eye(self.rank, dtype=np.int64)[i])) // int(self.gram[i, i])

    def coroot_coefficients(self, root: Root) -> tuple[int, ...]:
        """root^vee in terms of the simple coroots."""
        rr = self.inner(root, root)
        out = []
        for j, c in enumerate(root):
            val = Fraction(c * int(self.gram[j, j]), rr)
            if val.denominator != 1:
                raise ArithmeticError("non-integral coroot expansion")
            out.append(int(val))
        return tuple(out)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def height(self, root: Root) -> int:
        return sum(root)


def build_root_datum(type_label: str) -> RootDatum:
    family, n = parse_type(type_label)
    S = _gram_matrix(family, n)
    simple = [tuple(int(v) for v in row) for row in np.eye(n, dtype=np.int64)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                k = (2 * int(np.asarray(r) @ S[:, i])) // int(S[i, i])
                s = list(r)
                s[i] -= k
                s = tuple(s)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    positive = [r for r in roots if all(c >= 0 for c in r)]
    # heights ascending; within a height, descending lexicographic so alpha_1 comes first
    positive.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    return RootDatum(f"{family}{n}", n, S, tuple(positive))


@dataclass(frozen=True)
class ChevalleyBasis:
    root_datum: RootDatum
    labels: tuple[str, ...]
    table: np.ndarray = field(repr=False)
    extraspecial: tuple[tuple[Root, Root], ...] = field(repr=False)
    convention: str = CONVENTION_VERSION

    @property
    def dim(self) -> int:
        return len(self.labels)


class _Constants:
    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.cache: dict[tuple[Root, Root], int] = {}
        self.special: dict[Root, tuple[Root, Root]] = {}
        pos = rd.positive_roots
        for xi in pos:
            if sum(xi) == 1:
                continue
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if rd.is_root(b) and all(c >= 0 for c in b):
                    self.special[xi] = (a, b)
                    break

    def string_r(self, a: Root, b: Root) -> int:
        """Largest r with b - r a a root."""
        r = 0
        while self.rd.is_root(tuple(y - (r + 1) * x for x, y in zip(a, b))):
            r += 1
        return r

    def norm(self, r: Iterable[int]) -> int:
        r = tuple(r)
        return self.rd.inner(r, r)

    def N(self, a: Root, b: Root) -> int:
        key = (a, b)
        if key not in self.cache:
            self.cache[key] = self._compute(a, b)
        return self.cache[key]

    def _compute(self, a: Root, b: Root) -> int:
        rd = self.rd
        s = tuple(x + y for x, y in zip(a, b))
        if not rd.is_root(s):
            return 0
        pos_a = all(c >= 0 for c in a)
        pos_b = all(c >= 0 for c in b)
        neg = lambda r: tuple(-c for c in r)
        if not pos_a and not pos_b:
            return -self.N(neg(a), neg(b))
        if not pos_a:
            return -self.N(b, a)
        if not pos_b:
            c = neg(s)
            if all(x >= 0 for x in s):
                val = Fraction(self.norm(c), self.norm(a)) * self.N(b, c)
            else:
                val = Fraction(self.norm(c), self.norm(b)) * self.N(c, a)
            return _as_int(val)
        idx = rd.positive_index
        if idx[a] > idx[b]:
            return -self.N(b, a)
        a1, b1 = self.special[s]
        if (a, b) == (a1, b1):
            return self.string_r(a, b) + 1
        total = Fraction(0)
        ba = tuple(x - y for x, y in zip(b, a1))
        if rd.is_root(ba):
            total += Fraction(self.N(b, neg(a1)) * self.N(a, neg(b1)), self.norm(ba))
        aa = tuple(x - y for x, y in zip(a, a1))
        if rd.is_root(aa):
            total += Fraction(self.N(neg(a1), a) * self.N(b, neg(b1)), self.norm(aa))
        return _as_int(Fraction(self.norm(s), self.N(a1, b1)) * total)


def _as_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral structure constant {v}")
    return int(v)


def chevalley_structure_constants(rd: RootDatum) -> ChevalleyBasis:
    """Integral Chevalley basis: e_alpha (alpha > 0), f_alpha = e_{-alpha}, then h_1..h_rank."""
    pos = rd.positive_roots
    m, n = len(pos), rd.rank
    dim = 2 * m + n
    labels = ([f"e_{root_label(r)}" for r in pos] + [f"f_{root_label(r)}" for r in pos]
              + [f"h_{i + 1}" for i in range(n)])
    index: dict[Root, int] = {}
    for i, r in enumerate(pos):
        index[r] = i
        index[tuple(-c for c in r)] = m + i
    consts = _Constants(rd)
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    roots = rd.all_roots
    for a in roots:
        ia = index[a]
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if all(c == 0 for c in s):
                sign = 1 if all(c >= 0 for c in a) else -1
                absa = a if sign == 1 else b
                for j, d in enumerate(rd.coroot_coefficients(absa)):
                    C[ia, index[b], 2 * m + j] = sign * d
            elif rd.is_root(s):
                C[ia, index[b], index[s]] = consts.N(a, b)
        for j in range(n):
            w = rd.pairing(a, j)
            C[2 * m + j, ia, ia] = w
            C[ia, 2 * m + j, ia] = -w
    special = tuple(consts.special[xi] for xi in pos if xi in consts.special)
    return ChevalleyBasis(rd, tuple(labels), C, special)


def integral_checks(cb: ChevalleyBasis) -> dict:
    """Antisymmetry and exhaustive Jacobi over the integers."""
    bad_pair = antisymmetry_defect(cb.table, None)
    n_bad, witness = jacobi_scan(cb.table, None, stop_at_first=False)
    return {"antisymmetric": bad_pair is None, "jacobi_failures": n_bad,
            "jacobi_witness": None if witness is None else witness[0]}


def reduce_mod_p(cb: ChevalleyBasis, p: int, check: bool = True) -> LieAlgebra:
    return LieAlgebra(cb.table, p, cb.labels, check=check, name=f"{cb.root_datum.type_label}/GF({p})")


def simple_lie_algebra(type_label: str, p: int, check: bool = True) -> LieAlgebra:
    return reduce_mod_p(chevalley_structure_constants(build_root_datum(type_label)), p, check)


_LABEL_RE = re.compile(r"^([efh])_?\{?([0-9,]+)\}?$")


def normalize_label(label: str) -> str:
    """Accept e_{1000}, e_1000, e1000 or h_{1}; return the canonical basis label."""
    m = _LABEL_RE.match(label.strip().replace(" ", ""))
    if not m:
        raise KeyError(f"unknown basis label {label!r}")
    return f"{m.group(1)}_{m.group(2)}"


def element_from_label_sum(alg: LieAlgebra, terms: Iterable[tuple[int, str]]) -> np.ndarray:
    return alg.element((c, normalize_label(lab)) for c, lab in terms)


def dump_structure_constants(cb: ChevalleyBasis, p: Optional[int] = None) -> str:
    """Text table: header of basis labels, then lines ``i j k c`` for i < j, c != 0."""
    rd = cb.root_datum
    lines = ["# modlie structure constants",
             f"# type {rd.type_label} p {p if p else 0} convention {cb.convention}",
             f"# basis {cb.dim}"]
    lines += [f"# {i} {lab}" for i, lab in enumerate(cb.labels)]
    C = cb.table % p if p else cb.table
    for i, j, k in np.argwhere(C != 0):
        if i < j:
            lines.append(f"{i} {j} {k} {int(C[i, j, k])}")
    return "\n".join(lines) + "\n"
