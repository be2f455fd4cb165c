"""Integer gradings: cocharacter gradings of Chevalley algebras, regrading of
subalgebras from a degree table, and hypothesis checks for depth-one
recognition theorems."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import sympy

from .ffalg import Subspace, intersect, kernel, matmul_mod, projective_points, subspace_sum, span
from .liecore import (LieAlgebra, SubalgebraHandle, as_handle, bracket_span, center,
                      derived_subalgebra, is_nilpotent, quotient_algebra, solvable_radical)
from .modrep import MatrixRepresentation, adjoint_representation, is_absolutely_irreducible, is_irreducible
from .rootdata import RootDatum


class NotHomogeneousError(ValueError):
    pass


class IllDefinedGradingError(ValueError):
    pass


@dataclass(frozen=True)
class Cocharacter:
    """Integer weights on the simple roots."""

    weights: tuple[int, ...]

    def degree(self, root: Iterable[int]) -> int:
        return int(sum(c * t for c, t in zip(root, self.weights)))


@dataclass
class CocharacterSolution:
    """Rational solution set of <root, t> = target over the given roots."""

    particular: tuple
    nullspace: list
    cocharacter: Optional[Cocharacter]

    @property
    def unique(self) -> bool:
        return not self.nullspace


class InconsistentSystemError(ValueError):
    pass


def derive_cocharacter(roots: Sequence[Sequence[int]], target_degree: int = 2) -> CocharacterSolution:
    """Solve <root, t> = target_degree for every root in the support of e."""
    A = sympy.Matrix([list(r) for r in roots])
    b = sympy.Matrix([target_degree] * len(roots))
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise InconsistentSystemError(str(exc)) from None
    zero = {s: 0 for s in params}
    particular = tuple(sympy.nsimplify(x.subs(zero)) for x in sol)
    null = [tuple(v) for v in A.nullspace()]
    coch = None
    if not params and all(x.is_integer for x in particular):
        coch = Cocharacter(tuple(int(x) for x in particular))
    return CocharacterSolution(particular, null, coch)


@dataclass
class Grading:
    """A direct-sum decomposition of a subspace of ``algebra`` indexed by integers."""

    algebra: LieAlgebra
    components: dict[int, Subspace]

    @classmethod
    def from_basis_degrees(cls, alg: LieAlgebra, degrees: Sequence[int]) -> "Grading":
        comps: dict[int, list[int]] = {}
        for i, d in enumerate(degrees):
            comps.setdefault(int(d), []).append(i)
        eye = np.eye(alg.dim, dtype=np.int64)
        return cls(alg, {d: Subspace(eye[idx], alg.dim, alg.p) for d, idx in sorted(comps.items())})

    @property
    def degrees(self) -> list[int]:
        return sorted(d for d, c in self.components.items() if c.dim)

    def component(self, d: int) -> Subspace:
        return self.components.get(d, Subspace.zero(self.algebra.dim, self.algebra.p))

    def dims(self) -> dict[int, int]:
        return {d: self.components[d].dim for d in self.degrees}

    def profile(self, step: int = 1) -> list[int]:
        lo, hi = self.degrees[0], self.degrees[-1]
        return [self.component(d).dim for d in range(lo, hi + 1, step)]

    @property
    def depth(self) -> int:
        return -self.degrees[0]

    @property
    def top(self) -> int:
        return self.degrees[-1]

    @property
    def total_dim(self) -> int:
        return sum(c.dim for c in self.components.values())

    @property
    def space(self) -> Subspace:
        out = Subspace.zero(self.algebra.dim, self.algebra.p)
        for c in self.components.values():
            out = subspace_sum(out, c)
        return out

    def is_direct(self) -> bool:
        return self.space.dim == self.total_dim

    def restrict(self, sub: Subspace) -> "Grading":
        """Induced grading on a subspace, which must be a sum of its graded pieces."""
        comps = {d: intersect(sub, c) for d, c in self.components.items()}
        comps = {d: c for d, c in comps.items() if c.dim}
        if sum(c.dim for c in comps.values()) != sub.dim:
            raise NotHomogeneousError("subspace is not a sum of homogeneous pieces")
        return Grading(self.algebra, dict(sorted(comps.items())))

    def axiom_failures(self) -> list[tuple[int, int]]:
        """Degree pairs (i, j) with [L_i, L_j] not inside L_{i+j} (exhaustive on bases)."""
        bad = []
        degs = self.degrees
        for a, i in enumerate(degs):
            for j in degs[a:]:
                prods = bracket_span(self.algebra, self.component(i), self.component(j))
                if not self.component(i + j).contains_space(prods):
                    bad.append((i, j))
        return bad

    def degree_of(self, v) -> Optional[int]:
        """Degree of a homogeneous vector, None if it is not homogeneous."""
        v = np.asarray(v) % self.algebra.p
        if not np.any(v):
            return None
        for d in self.degrees:
            if self.components[d].contains(v):
                return d
        return None

    def table(self) -> str:
        degs = self.degrees
        w = max(3, *(len(str(d)) for d in degs))
        head = "deg |" + "".join(f"{d:>{w + 1}}" for d in degs)
        row = "dim |" + "".join(f"{self.components[d].dim:>{w + 1}}" for d in degs)
        return head + "\n" + row


def cocharacter_grading(alg: LieAlgebra, rd: RootDatum, tau: Cocharacter) -> Grading:
    """Grading of a Chevalley-basis algebra: e_a has degree <a, tau>, f_a minus that, h_i zero."""
    pos = rd.positive_roots
    degrees = [tau.degree(r) for r in pos] + [-tau.degree(r) for r in pos] + [0] * rd.rank
    if len(degrees) != alg.dim:
        raise ValueError("algebra is not the Chevalley algebra of this root datum")
    return Grading.from_basis_degrees(alg, degrees)


def grade_subalgebra(s: SubalgebraHandle, ambient: Grading) -> Grading:
    return ambient.restrict(s.space)


@dataclass
class VDecomposition:
    w: np.ndarray
    kernel_dim: int
    V: Subspace
    W: Subspace
    direct: bool
    spans_L: bool
    VV: Subspace
    w_invariant: bool

    @property
    def VV_equals_W(self) -> bool:
        return self.VV == self.W


def build_V_decomposition(alg: LieAlgebra, L: SubalgebraHandle, W: SubalgebraHandle, e,
                          tau_L: Grading, degree: int = 4) -> VDecomposition:
    """w spans ker(ad e) in L(tau, degree); V = span(w) + [W, w]."""
    K = intersect(kernel(alg.ad(e), alg.p), tau_L.component(degree))
    if K.dim != 1:
        raise ValueError(f"ker(ad e) in L(tau,{degree}) has dimension {K.dim}, expected 1")
    w = K.basis[0]
    wsp = span([w], alg.dim, alg.p)
    V = subspace_sum(wsp, bracket_span(alg, W.space, wsp))
    direct = intersect(V, W.space).dim == 0
    spans = subspace_sum(V, W.space) == L.space
    VV = bracket_span(alg, V, V)
    inv = V.contains_space(bracket_span(alg, W.space, V))
    return VDecomposition(w, K.dim, V, W.space, direct, spans, VV, inv)


# tau-degree of a V component -> new degree
REGRADING_TABLE = {4: -1, 2: 0, 0: 1, -2: 0, -4: 1, -6: 2, -8: 1, -10: 2}


@dataclass
class Regrading:
    L: Grading
    W: Grading
    V: Grading
    V_tau: Grading
    d_table: dict


def regrade_by_table(alg: LieAlgebra, V: Subspace, W: Subspace, tau_grading: Grading,
                     d_table: Mapping[int, int]) -> Regrading:
    """New degrees on V from the table, on W from products [u, v] of V pieces."""
    V_tau = tau_grading.restrict(V)
    missing = [i for i in V_tau.degrees if i not in d_table]
    if missing:
        raise KeyError(f"degree table has no entry for tau-degrees {missing}")
    zero = Subspace.zero(alg.dim, alg.p)
    v_new: dict[int, Subspace] = {}
    for i in V_tau.degrees:
        k = d_table[i]
        v_new[k] = subspace_sum(v_new.get(k, zero), V_tau.component(i))
    w_new: dict[int, Subspace] = {}
    for i, j in itertools.combinations_with_replacement(V_tau.degrees, 2):
        prods = bracket_span(alg, V_tau.component(i), V_tau.component(j))
        if prods.dim:
            k = d_table[i] + d_table[j]
            w_new[k] = subspace_sum(w_new.get(k, zero), prods)
    Wg = Grading(alg, dict(sorted(w_new.items())))
    if Wg.total_dim != W.dim or Wg.space != W:
        raise IllDefinedGradingError(
            f"products of V give component dimensions summing to {Wg.total_dim}, "
            f"spanning dimension {Wg.space.dim}; W has dimension {W.dim}")
    Vg = Grading(alg, dict(sorted(v_new.items())))
    degs = sorted(set(w_new) | set(v_new))
    Lg = Grading(alg, {d: subspace_sum(Wg.component(d), Vg.component(d)) for d in degs})
    if not Lg.is_direct():
        raise IllDefinedGradingError("W and V components are not independent")
    return Regrading(Lg, Wg, Vg, V_tau, dict(d_table))


SL2_DIM_CAP = 12


def _enumerate_coset(point: np.ndarray, direction: Subspace, p: int) -> np.ndarray:
    k = direction.dim
    if k == 0:
        return point.reshape(1, -1)
    coeffs = np.indices((p,) * k).reshape(k, -1).T
    return (point + matmul_mod(coeffs, direction.basis, p)) % p


def find_sl2_triple(s, cap: int = SL2_DIM_CAP):
    """An (e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h spanning a 3-dim subalgebra.

    e runs over projective points of s; for each, [[e, f], e] = 2e is an
    affine condition on f, whose solutions are then tested for [h, f] = -2f.
    Returns parent-algebra vectors, or None.
    """
    from .ffalg import solve_simultaneous

    s = as_handle(s)
    if s.dim > cap:
        raise ValueError(f"sl2 search capped at dimension {cap}, got {s.dim}")
    A = s.algebra
    p, d = A.p, A.dim
    for ec in projective_points(d, p):
        ad_e = A.ad(ec)
        M = (-matmul_mod(ad_e, ad_e, p)) % p  # f -> [[e, f], e]
        sol = solve_simultaneous([(M, (2 * ec) % p)], d, p)
        if sol is None:
            continue
        F = _enumerate_coset(sol.point, sol.direction, p)
        H = (F @ ad_e.T) % p  # h = [e, f] per row
        HF = A.brackets(H, F)[np.arange(len(F)), np.arange(len(F))] if len(F) else F
        ok = np.all((HF - (-2 * F)) % p == 0, axis=1)
        for idx in np.flatnonzero(ok):
            f, h = F[idx], H[idx]
            if span([ec, h, f], d, p).dim == 3:
                return tuple(s.lift(v)[0] for v in (ec, h, f))
    return None


def is_sl2_triple(alg: LieAlgebra, e, h, f) -> bool:
    p = alg.p
    return (np.array_equal(alg.bracket(h, e), (2 * np.asarray(e)) % p)
            and np.array_equal(alg.bracket(h, f), (-2 * np.asarray(f)) % p)
            and np.array_equal(alg.bracket(e, f), np.asarray(h) % p))


def sign_scan(alg: LieAlgebra, terms: Sequence[tuple[int, str]], predicate):
    """First relative sign assignment on a sum of basis vectors satisfying ``predicate``.

    The leading term keeps its sign; returns (signs, vector) or None.
    """
    for flips in itertools.product((1, -1), repeat=max(len(terms) - 1, 0)):
        signs = (1,) + flips
        v = alg.element((c * s, lab) for s, (c, lab) in zip(signs, terms))
        if predicate(v):
            return signs, v
    return None


@dataclass
class RecognitionReport:
    kind: str
    theorem: str
    depth: int
    component_dims: dict
    zero_component: dict
    hypothesis_checklist: dict
    witnesses: dict = field(default_factory=dict)
    informational: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(self.hypothesis_checklist.values())


ERMOLAEV_PROFILE = (3, 6, 9, 6, 2)
WITT_PROFILE = (2, 4, 6, 4, 2)


def _rep_on_component(alg: LieAlgebra, acting: Subspace, module: Subspace) -> MatrixRepresentation:
    mats = []
    for b in acting.basis:
        imgs = alg.brackets(b, module.basis)[0]  # (k, n)
        mats.append(imgs[:, module.pivots].T)
    return MatrixRepresentation(np.array(mats).reshape(len(mats), module.dim, module.dim), alg.p)


def recognition_certificate(graded: Grading, kind: str = "ermolaev", seed: int = 0,
                            expected_profile: Optional[Sequence[int]] = None) -> RecognitionReport:
    """Check the hypotheses of the depth-one recognition theorem for ``kind``.

    ``kind`` is "ermolaev" (non-semisimple zero component) or "witt"
    (zero component classical simple modulo its centre).
    """
    alg = graded.algebra
    p = alg.p
    whole = SubalgebraHandle(alg, graded.space)
    L0 = SubalgebraHandle(alg, graded.component(0))
    checks: dict[str, bool] = {}
    wit: dict = {}
    info: dict = {}
    profile = graded.profile()
    if expected_profile is None:
        expected_profile = ERMOLAEV_PROFILE if kind == "ermolaev" else WITT_PROFILE
    checks["depth_one"] = graded.depth == 1
    checks["grading_axiom"] = not graded.axiom_failures()
    checks["component_dims"] = tuple(profile) == tuple(expected_profile)
    verdict = is_absolutely_irreducible(adjoint_representation(whole), seed)
    checks["simple"] = bool(verdict)
    wit["commutant_dim"] = verdict.commutant_dim
    zero: dict = {"dim": L0.dim}
    triple = find_sl2_triple(L0)
    zero["sl2_triple"] = None if triple is None else [alg.format(v) for v in triple]
    cen = center(L0)
    zero["center_dim"] = cen.dim
    if kind == "ermolaev":
        theorem = "depth-one graded simple algebra with non-central nilpotent radical in L_0"
        R = solvable_radical(L0)
        zero["radical_dim"] = R.dim
        zero["radical_basis"] = [alg.format(v) for v in R.basis]
        checks["radical_nonzero"] = R.dim > 0
        checks["radical_nilpotent"] = R.dim > 0 and is_nilpotent(R)
        checks["radical_non_central"] = bracket_span(alg, L0.space, R.space).dim > 0
        q_ok = False
        if triple is not None and R.dim < L0.dim:
            local_R = Subspace(L0.coordinates(R.basis), L0.dim, p) if R.dim else Subspace.zero(L0.dim, p)
            Q, _ = quotient_algebra(L0.algebra, local_R)
            coords = L0.coordinates(np.array(triple))
            images = local_R.quotient_coordinates(coords)
            q_ok = Q.dim == 3 and span(images, Q.dim, p).dim == 3
            zero["quotient_dim"] = Q.dim
        checks["quotient_is_sl2"] = q_ok
    else:
        theorem = "depth-one graded simple algebra with classical simple L_0 modulo its centre"
        D = derived_subalgebra(L0)
        zero["derived_dim"] = D.dim
        checks["center_one_dim"] = cen.dim == 1
        checks["derived_is_sl2"] = (D.dim == 3 and triple is not None
                                    and span(list(triple), alg.dim, p) == D.space)
        checks["zero_component_split"] = (intersect(D.space, cen).dim == 0
                                          and subspace_sum(D.space, cen) == L0.space)
        zero["center_basis"] = [alg.format(v) for v in cen.basis]
    m1 = graded.component(-1)
    if m1.dim and L0.dim:
        rep = _rep_on_component(alg, L0.space, m1)
        info["L_minus1_irreducible_over_L0"] = bool(is_irreducible(rep, seed))
    return RecognitionReport(kind, theorem, graded.depth, graded.dims(), zero, checks, wit, info)


@dataclass
class DualityVerdict:
    dim_bottom: int
    dim_top: int
    bottom_degree: int
    top_degree: int

    @property
    def dims_differ(self) -> bool:
        return self.dim_bottom != self.dim_top


def duality_check(graded: Grading) -> DualityVerdict:
    """Compare the lowest and highest components; unequal dims rule out L_{-1} = (L_top)^*."""
    lo, hi = graded.degrees[0], graded.degrees[-1]
    return DualityVerdict(graded.component(lo).dim, graded.component(hi).dim, lo, hi)


def is_isomorphism(src: LieAlgebra, dst: LieAlgebra, phi) -> bool:
    """Whether the matrix ``phi`` (dst.dim x src.dim) is a bijective bracket-preserving map."""
    from .ffalg import rank

    phi = np.asarray(phi, dtype=np.int64) % src.p
    if src.dim != dst.dim or phi.shape != (dst.dim, src.dim) or rank(phi, src.p) != src.dim:
        return False
    eye = np.eye(src.dim, dtype=np.int64)
    lhs = src.brackets(eye, eye).reshape(-1, src.dim) @ phi.T % src.p
    imgs = phi.T  # row i = phi(b_i)
    rhs = dst.brackets(imgs, imgs).reshape(-1, dst.dim)
    return np.array_equal(lhs, rhs)
