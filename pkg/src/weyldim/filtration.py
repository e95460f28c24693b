"""Filtration steps of cyclic modules M = D/I as exact linear algebra.

The Bernstein filtration B_t (all operators of total degree |a|+|b| <= t)
makes every step a finite-dimensional rational vector space, so the step
Gamma_t = B_t.z of M is B_t modulo I /\ B_t.  The ideal intersection is
approximated from below by the span of the products

    m * g_j,   m a monomial,  bernstein_degree(m * g_j) <= s,

with s = t + max_j bernstein_degree(g_j) + slack.  Row-reducing with
degree-DESCENDING columns makes the B_t intersection fall out of the
echelon form: a row whose pivot has degree <= t is automatically
supported in B_t, and those rows are exactly a basis of the truncated
intersection.

The computed subspace is always contained in the true I /\ B_t, so
gamma_dim over-estimates and is nonincreasing in slack; `stabilized`
records that the value survived `stabilization_window` extra slack.  The
dimension is monotone in slack, so equality at the two endpoints is
checked rather than every intermediate value.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatchError,
    ModuleMismatchError,
    UnboundedBasisError,
)
from .linalg import RowSpace, SparseRow
from .weyl import (
    DiffOp,
    ExponentPair,
    bernstein_degree,
    mul,
    term_order_key,
)

DEFAULT_STABILIZATION_WINDOW = 2

_ZERO = Fraction(0)


class LeftIdealPresentation:
    """Generators g_1..g_m of a left ideal I = D g_1 + ... + D g_m.

    The empty generator list encodes I = 0.
    """

    __slots__ = ("n", "generators")

    def __init__(self, n: int, generators=()):
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, DiffOp):
                raise TypeError(f"generator {g!r} is not a DiffOp")
            if g.n != n:
                raise DimensionMismatchError(f"generator over n={g.n}, ideal over n={n}")
            if g.is_zero():
                raise ValueError("zero operator is not allowed as an ideal generator")
        if n < 1:
            raise ValueError("ambient variable count must be >= 1")
        self.n = n
        self.generators = gens

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LeftIdealPresentation)
            and self.n == other.n
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        gens = ", ".join(repr(g) for g in self.generators)
        return f"LeftIdealPresentation(n={self.n}, generators=({gens}))"


@dataclass(frozen=True)
class TruncationParams:
    """Knobs for the ideal truncation.

    slack = None means the per-ideal default, max generator degree + 2.
    """

    slack: int | None = None
    stabilization_window: int = DEFAULT_STABILIZATION_WINDOW

    def __post_init__(self):
        if self.slack is not None and self.slack < 0:
            raise ValueError("slack must be >= 0")
        if self.stabilization_window < 1:
            raise ValueError("stabilization window must be >= 1")

    def resolved_slack(self, ideal: LeftIdealPresentation) -> int:
        if self.slack is not None:
            return self.slack
        return default_slack(ideal)


@dataclass(frozen=True)
class GoodFiltrationSpec:
    """Gamma_t = sum_i F_{t-k_i} * u_i for module generators u_i with shifts k_i."""

    ideal: LeftIdealPresentation
    generators_in_M: tuple
    shifts: tuple

    def __post_init__(self):
        gens = tuple(self.generators_in_M)
        shifts = tuple(int(k) for k in self.shifts)
        object.__setattr__(self, "generators_in_M", gens)
        object.__setattr__(self, "shifts", shifts)
        if not gens:
            raise ValueError("a good filtration needs at least one module generator")
        if len(gens) != len(shifts):
            raise ValueError("one shift per generator required")
        if any(k < 0 for k in shifts):
            raise ValueError("shifts must be >= 0")
        for u in gens:
            if not isinstance(u, DiffOp):
                raise TypeError(f"module generator {u!r} is not a DiffOp")
            if u.n != self.ideal.n:
                raise DimensionMismatchError("module generator over wrong ambient count")


@dataclass(frozen=True)
class FiltrationSnapshot:
    """Exact coordinate data of one step Gamma_t.

    `monomials` lists the B_t monomial columns in degree-descending
    degrevlex order; `basis` holds the RREF rows of the truncated ideal
    intersection in those coordinates; the non-pivot monomials
    (`quotient_monomials`, ascending) are a k-basis of Gamma_t itself.
    """

    t: int
    n: int
    monomials: tuple
    basis: tuple
    quotient_monomials: tuple
    gamma_dim: int
    ideal_dim_in_Bt: int
    stabilized: bool
    slack_used: int


def max_generator_degree(ideal: LeftIdealPresentation) -> int:
    if not ideal.generators:
        return 0
    return max(int(bernstein_degree(g)) for g in ideal.generators)


def default_slack(ideal: LeftIdealPresentation) -> int:
    return max_generator_degree(ideal) + 2


# ---------------------------------------------------------------------------
# monomial enumeration

def _vectors_with_sum(n: int, s: int):
    """All length-n tuples of non-negative ints summing to exactly s."""
    if n == 1:
        yield (s,)
        return
    for first in range(s + 1):
        for rest in _vectors_with_sum(n - 1, s - first):
            yield (first,) + rest


def exponent_pairs_of_degree(n: int, deg: int) -> list[ExponentPair]:
    """All (a, b) with |a| + |b| = deg, in ascending degrevlex order."""
    pairs = []
    for da in range(deg + 1):
        for a in _vectors_with_sum(n, da):
            for b in _vectors_with_sum(n, deg - da):
                pairs.append((a, b))
    pairs.sort(key=lambda ab: term_order_key(*ab))
    return pairs


def monomial_basis(n: int, t: int, filtration: str = "bernstein", trunc: int | None = None):
    """Monomials spanning one filtration step, ascending degrevlex.

    Bernstein mode lists all |a|+|b| <= t.  Order mode lists |b| <= t but
    needs the x-truncation bound to be finite.
    """
    if t < 0:
        raise ValueError("step index must be >= 0")
    if filtration == "bernstein":
        out = []
        for deg in range(t + 1):
            out.extend(exponent_pairs_of_degree(n, deg))
        return out
    if filtration == "order":
        if trunc is None:
            raise UnboundedBasisError(
                "order-filtration steps are infinite-dimensional over k[x]; set an x-truncation bound"
            )
        out = []
        for da in range(trunc + 1):
            for a in _vectors_with_sum(n, da):
                for db in range(t + 1):
                    for b in _vectors_with_sum(n, db):
                        out.append((a, b))
        out.sort(key=lambda ab: term_order_key(*ab))
        return out
    raise ValueError(f"unknown filtration {filtration!r}")


def _basis_count(n: int, t: int) -> int:
    # stars and bars: monomials in 2n variables of total degree <= t
    return math.comb(t + 2 * n, 2 * n)


# ---------------------------------------------------------------------------
# truncated ideal spaces
#
# Columns are indexed by -position, where position is the monomial's rank
# in the ascending degrevlex enumeration of ALL exponent pairs.  High
# degree monomials then get the smallest (most negative) indices, which
# is exactly the elimination priority the extraction argument needs, and
# the numbering never shifts as bounds grow.


class _DimsBuild:
    """Incremental RREF of all products m*g_j, ordered by product degree.

    Pivot birth degrees make dim(I_trunc(s) /\ B_t) readable for every
    s <= built_degree from one shared build: the pivot SET at stage s is
    {p : birth[p] <= s} even though later back-elimination rewrites row
    contents.
    """

    def __init__(self, ideal: LeftIdealPresentation):
        self.ideal = ideal
        self.maxdeg = max_generator_degree(ideal)
        self.space = RowSpace()
        self.birth: dict[int, int] = {}
        self.built = -1
        self.pos: dict[ExponentPair, int] = {}
        self._pos_degree = -1
        self.lock = threading.RLock()

    def _ensure_positions(self, degree: int) -> None:
        while self._pos_degree < degree:
            self._pos_degree += 1
            for key in exponent_pairs_of_degree(self.ideal.n, self._pos_degree):
                self.pos[key] = len(self.pos)

    def _row_of(self, op: DiffOp) -> SparseRow:
        return {-self.pos[key]: c for key, c in op.terms.items()}

    def build_to(self, s: int) -> None:
        with self.lock:
            n = self.ideal.n
            for r in range(self.built + 1, s + 1):
                self._ensure_positions(r)
                for g in self.ideal.generators:
                    mdeg = r - int(bernstein_degree(g))
                    if mdeg < 0:
                        continue
                    for a, b in exponent_pairs_of_degree(n, mdeg):
                        row = self._row_of(mul(DiffOp.monomial(a, b), g))
                        pivot = self.space.add(row)
                        if pivot is not None:
                            self.birth[pivot] = r
                self.built = r

    def dim_in_Bt(self, t: int, s: int) -> int:
        with self.lock:
            if self.built < s:
                raise RuntimeError("dims queried beyond built degree")
            cutoff = _basis_count(self.ideal.n, t)
            return sum(1 for p, born in self.birth.items() if born <= s and -p < cutoff)


class _ContentSpace:
    """Exact RREF of the product span at one fixed bound s (contents valid)."""

    def __init__(self, ideal: LeftIdealPresentation, s: int):
        self.ideal = ideal
        self.s = s
        self.monomials = monomial_basis(ideal.n, s)
        self.pos = {key: i for i, key in enumerate(self.monomials)}
        self.space = RowSpace()
        n = ideal.n
        for g in ideal.generators:
            gdeg = int(bernstein_degree(g))
            for mdeg in range(s - gdeg + 1):
                for a, b in exponent_pairs_of_degree(n, mdeg):
                    self.space.add(self.row_of(mul(DiffOp.monomial(a, b), g)))

    def row_of(self, op: DiffOp) -> SparseRow:
        return {-self.pos[key]: c for key, c in op.terms.items()}

    def reduce_op(self, op: DiffOp) -> SparseRow:
        return self.space.reduce(self.row_of(op))

    def dim_in_Bt(self, t: int) -> int:
        cutoff = _basis_count(self.ideal.n, t)
        return sum(1 for p in self.space.pivots if -p < cutoff)

    def rows_in_Bt(self, t: int) -> list[SparseRow]:
        """RREF rows of the B_t intersection in local descending columns."""
        cutoff = _basis_count(self.ideal.n, t)
        shift = cutoff - 1
        out = []
        for p in sorted(self.space.pivots):
            if -p < cutoff:
                out.append({shift + c: v for c, v in self.space.pivots[p].items()})
        return out

    def pivot_positions_in_Bt(self, t: int) -> set[int]:
        cutoff = _basis_count(self.ideal.n, t)
        return {-p for p in self.space.pivots if -p < cutoff}


_DIMS_CACHE: dict[LeftIdealPresentation, _DimsBuild] = {}
_CONTENT_CACHE: dict[tuple[LeftIdealPresentation, int], _ContentSpace] = {}
_CACHE_LOCK = threading.Lock()


def clear_caches() -> None:
    with _CACHE_LOCK:
        _DIMS_CACHE.clear()
        _CONTENT_CACHE.clear()


def _dims_build(ideal: LeftIdealPresentation) -> _DimsBuild:
    with _CACHE_LOCK:
        build = _DIMS_CACHE.get(ideal)
        if build is None:
            build = _DIMS_CACHE[ideal] = _DimsBuild(ideal)
        return build


def _content_space(ideal: LeftIdealPresentation, s: int) -> _ContentSpace:
    with _CACHE_LOCK:
        cs = _CONTENT_CACHE.get((ideal, s))
    if cs is not None:
        return cs
    cs = _ContentSpace(ideal, s)
    with _CACHE_LOCK:
        return _CONTENT_CACHE.setdefault((ideal, s), cs)


def ideal_dims_at_slacks(
    ideal: LeftIdealPresentation, t: int, slacks: list[int]
) -> list[int]:
    """dim(I_trunc /\ B_t) for several slack values from one shared build."""
    maxdeg = max_generator_degree(ideal)
    build = _dims_build(ideal)
    top = t + maxdeg + max(slacks)
    build.build_to(top)
    return [build.dim_in_Bt(t, t + maxdeg + sl) for sl in slacks]


def truncated_ideal_subspace(
    ideal: LeftIdealPresentation, t: int, params: TruncationParams = TruncationParams()
) -> FiltrationSnapshot:
    """RREF data of the degree-s product span intersected with B_t."""
    if t < 0:
        raise ValueError("step index must be >= 0")
    slack = params.resolved_slack(ideal)
    window = params.stabilization_window
    dim_now, dim_far = ideal_dims_at_slacks(ideal, t, [slack, slack + window])
    s = t + max_generator_degree(ideal) + slack
    cs = _content_space(ideal, s)
    rows = cs.rows_in_Bt(t)
    if len(rows) != dim_now:
        raise AssertionError("content and dims builds disagree; cache corrupted")
    count = _basis_count(ideal.n, t)
    basis_asc = monomial_basis(ideal.n, t)
    pivot_positions = cs.pivot_positions_in_Bt(t)
    quotient = tuple(m for i, m in enumerate(basis_asc) if i not in pivot_positions)
    return FiltrationSnapshot(
        t=t,
        n=ideal.n,
        monomials=tuple(reversed(basis_asc)),
        basis=tuple(rows),
        quotient_monomials=quotient,
        gamma_dim=count - dim_now,
        ideal_dim_in_Bt=dim_now,
        stabilized=dim_now == dim_far,
        slack_used=slack,
    )


def gamma_dim(
    ideal: LeftIdealPresentation, t: int, params: TruncationParams = TruncationParams()
) -> FiltrationSnapshot:
    """Snapshot of Gamma_t = B_t.z in M = D/I; gamma_dim = dim B_t - dim(I_trunc /\ B_t)."""
    return truncated_ideal_subspace(ideal, t, params)


def gamma_dim_value(
    ideal: LeftIdealPresentation, t: int, params: TruncationParams = TruncationParams()
) -> tuple[int, bool]:
    """(gamma_dim, stabilized) without materializing basis rows; the fast path."""
    slack = params.resolved_slack(ideal)
    window = params.stabilization_window
    dim_now, dim_far = ideal_dims_at_slacks(ideal, t, [slack, slack + window])
    return _basis_count(ideal.n, t) - dim_now, dim_now == dim_far


def reduce_element_certified(
    p: DiffOp,
    ideal: LeftIdealPresentation,
    params: TruncationParams = TruncationParams(),
    t: int | None = None,
) -> tuple[list[Fraction], bool, int]:
    """(coordinates of p over the ascending B_t basis, stabilized, t).

    t defaults to bernstein_degree(p).  The vector is the canonical
    residual modulo the truncated ideal subspace; all-zero certifies
    p = 0 in M only when `stabilized` is set.  Stability of the
    intersection DIMENSION implies stability of the residual because the
    truncated subspaces are nested as slack grows.
    """
    if p.n != ideal.n:
        raise DimensionMismatchError(f"element over n={p.n}, ideal over n={ideal.n}")
    pdeg = 0 if p.is_zero() else int(bernstein_degree(p))
    if t is None:
        t = pdeg
    elif t < pdeg:
        raise ValueError(f"element has degree {pdeg}, exceeds requested step {t}")
    slack = params.resolved_slack(ideal)
    window = params.stabilization_window
    dim_now, dim_far = ideal_dims_at_slacks(ideal, t, [slack, slack + window])
    s = t + max_generator_degree(ideal) + slack
    cs = _content_space(ideal, s)
    residual = cs.reduce_op(p)
    count = _basis_count(ideal.n, t)
    vector = [residual.get(-i, _ZERO) for i in range(count)]
    return vector, dim_now == dim_far, t


def reduce_element(
    p: DiffOp,
    ideal: LeftIdealPresentation,
    params: TruncationParams = TruncationParams(),
) -> list[Fraction]:
    """Coordinate vector of p's class over monomial_basis(n, t, bernstein)."""
    return reduce_element_certified(p, ideal, params)[0]


def is_zero_module(
    ideal: LeftIdealPresentation, params: TruncationParams = TruncationParams()
) -> tuple[bool, bool]:
    """(1 reduces to zero, that verdict is stabilized)."""
    vector, stabilized, _ = reduce_element_certified(DiffOp.one(ideal.n), ideal, params)
    return not any(vector), stabilized


def reduce_op_sparse(
    op: DiffOp,
    ideal: LeftIdealPresentation,
    t_ref: int,
    params: TruncationParams = TruncationParams(),
) -> SparseRow:
    """Sparse reduced coordinates of op at level t_ref, for bulk rank work.

    Column c corresponds to ascending basis position -c; all ops passed in
    must have bernstein degree <= t_ref.
    """
    if op.n != ideal.n:
        raise DimensionMismatchError(f"element over n={op.n}, ideal over n={ideal.n}")
    deg = 0 if op.is_zero() else int(bernstein_degree(op))
    if deg > t_ref:
        raise ValueError(f"element degree {deg} exceeds level {t_ref}")
    slack = params.resolved_slack(ideal)
    s = t_ref + max_generator_degree(ideal) + slack
    return _content_space(ideal, s).reduce_op(op)


# ---------------------------------------------------------------------------
# interleaving of good filtrations


def _step_spans(
    spec: GoodFiltrationSpec, j_max: int, cs: _ContentSpace
) -> list[RowSpace]:
    """Reduced span of Gamma_j for j = 0..j_max, built layer by layer."""
    n = spec.ideal.n
    spans = []
    current = RowSpace()
    for j in range(j_max + 1):
        for u, k in zip(spec.generators_in_M, spec.shifts):
            mdeg = j - k
            if mdeg < 0:
                continue
            for a, b in exponent_pairs_of_degree(n, mdeg):
                current.add(cs.reduce_op(mul(DiffOp.monomial(a, b), u)))
        spans.append(current.copy())
    return spans


def filtration_step_dims(
    spec: GoodFiltrationSpec,
    j_max: int,
    params: TruncationParams = TruncationParams(),
) -> tuple[list[int], bool]:
    """(dim Gamma_j for j = 0..j_max, truncation stabilized).

    This is the Hilbert function of the good filtration itself; for the
    spec {1} with shift 0 it coincides with gamma_dim.
    """
    ideal = spec.ideal
    offset = 0
    for u, k in zip(spec.generators_in_M, spec.shifts):
        offset = max(offset, int(bernstein_degree(u)) - k)
    t_ref = j_max + offset
    slack = params.resolved_slack(ideal)
    dims = ideal_dims_at_slacks(
        ideal, t_ref, [slack, slack + params.stabilization_window]
    )
    s = t_ref + max_generator_degree(ideal) + slack
    cs = _content_space(ideal, s)
    spans = _step_spans(spec, j_max, cs)
    return [span.rank for span in spans], dims[0] == dims[1]


def interleave_width(
    gamma: GoodFiltrationSpec,
    omega: GoodFiltrationSpec,
    t_max: int,
    params: TruncationParams = TruncationParams(),
) -> int | None:
    """Minimal w <= t_max with Omega_{j-w} <= Gamma_j <= Omega_{j+w} for all j <= t_max.

    Returns None when no such w exists up to t_max.  Steps are compared as
    spans of reduced coordinates inside a common B_T, T large enough to
    hold every step up to j = 2*t_max.
    """
    if gamma.ideal != omega.ideal:
        raise ModuleMismatchError("the two filtration specs present different modules")
    ideal = gamma.ideal
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    j_max = 2 * t_max
    offset = 0
    for spec in (gamma, omega):
        for u, k in zip(spec.generators_in_M, spec.shifts):
            offset = max(offset, int(bernstein_degree(u)) - k)
    t_ref = j_max + offset
    slack = params.resolved_slack(ideal)
    s = t_ref + max_generator_degree(ideal) + slack
    cs = _content_space(ideal, s)
    gamma_steps = _step_spans(gamma, j_max, cs)
    omega_steps = _step_spans(omega, j_max, cs)
    for w in range(t_max + 1):
        ok = True
        for j in range(t_max + 1):
            if j - w >= 0 and not gamma_steps[j].contains_space(omega_steps[j - w]):
                ok = False
                break
            if not omega_steps[j + w].contains_space(gamma_steps[j]):
                ok = False
                break
        if ok:
            return w
    return None
