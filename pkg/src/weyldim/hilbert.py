"""Hilbert function sampling and exact finite-difference fitting.

h(t) = dim_k Gamma_t is eventually a polynomial in t; its degree is the
module dimension d(M).  Degree detection is exact: forward differences
over a sample window, degree = largest order with a nonzero difference,
and the candidate is accepted only when the next difference row vanishes
identically (never least-squares, which would mask truncation bugs).
The sampler never reports an unverified degree: it doubles the sampling
horizon until an exact, fully stabilized fit covers a trailing window,
and raises inconclusive past the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InconclusiveError, InsufficientDataError, ZeroModuleError
from .filtration import (
    LeftIdealPresentation,
    TruncationParams,
    gamma_dim_value,
    is_zero_module,
)
from .weyl import NEG_INF


@dataclass(frozen=True)
class HilbertSample:
    t: int
    value: int
    stabilized: bool


@dataclass(frozen=True)
class HilbertFit:
    """A window of samples plus the exact polynomial fitted on it.

    binomial_coeffs are c_0..c_d with p(t) = sum_j c_j * C(t, j); leading
    is c_d.  degree is the NEG_INF marker for the zero polynomial.
    """

    samples: tuple
    binomial_coeffs: tuple
    degree: int | float
    leading: Fraction | None
    fit_window: tuple
    exact_on_window: bool

    @property
    def all_stabilized(self) -> bool:
        return all(s.stabilized for s in self.samples)

    def evaluate(self, t: int) -> Fraction:
        return sum(
            (c * math.comb(t, j) for j, c in enumerate(self.binomial_coeffs)),
            Fraction(0),
        )


@dataclass(frozen=True)
class DimensionConfig:
    """Sampling policy for module_dimension."""

    slack: int | None = None
    stabilization_window: int = 2
    budget: int = 16
    fit_window: int = 4
    initial_t: int = 8

    def truncation_params(self) -> TruncationParams:
        return TruncationParams(self.slack, self.stabilization_window)


def hilbert_function(
    ideal: LeftIdealPresentation,
    t_lo: int,
    t_hi: int,
    params: TruncationParams = TruncationParams(),
) -> list[HilbertSample]:
    """gamma_dim for each t in [t_lo, t_hi], with stabilization flags."""
    if not 0 <= t_lo <= t_hi:
        raise ValueError("need 0 <= t_lo <= t_hi")
    out = []
    for t in range(t_lo, t_hi + 1):
        value, stabilized = gamma_dim_value(ideal, t, params)
        out.append(HilbertSample(t, value, stabilized))
    return out


def _neg_binomial(t_lo: int, k: int) -> int:
    # C(-t_lo, k) = (-1)^k * C(t_lo + k - 1, k)
    return (-1) ** k * math.comb(t_lo + k - 1, k) if k else 1


def finite_difference_fit(samples) -> HilbertFit:
    """Exact Newton forward-difference fit over consecutive samples."""
    samples = tuple(samples)
    if len(samples) < 3:
        raise InsufficientDataError("need at least 3 consecutive samples")
    for prev, cur in zip(samples, samples[1:]):
        if cur.t != prev.t + 1:
            raise ValueError("samples must have consecutive t")
    vals = [Fraction(s.value) for s in samples]
    diffs = [vals]
    while len(diffs[-1]) > 1:
        row = diffs[-1]
        diffs.append([row[i + 1] - row[i] for i in range(len(row) - 1)])
    degree: int | float = NEG_INF
    for j in range(len(diffs) - 1, -1, -1):
        if any(diffs[j]):
            degree = j
            break
    window = (samples[0].t, samples[-1].t)
    if degree is NEG_INF:
        return HilbertFit(samples, (), NEG_INF, None, window, True)
    if len(vals) < degree + 2:
        raise InsufficientDataError(
            f"degree {degree} needs at least {degree + 2} samples, got {len(vals)}"
        )
    exact = not any(diffs[degree + 1])
    t_lo = samples[0].t
    delta0 = [diffs[j][0] for j in range(degree + 1)]
    coeffs = tuple(
        sum(
            (delta0[j] * _neg_binomial(t_lo, j - i) for j in range(i, degree + 1)),
            Fraction(0),
        )
        for i in range(degree + 1)
    )
    return HilbertFit(samples, coeffs, degree, coeffs[degree], window, exact)


def scan_exact_fit(samples, fit_window: int) -> HilbertFit | None:
    """Earliest tail fit that is exact, stabilized, and covers the trailing window."""
    samples = list(samples)
    need = max(3, fit_window)
    for t0 in range(len(samples) - need + 1):
        sub = samples[t0:]
        if not all(s.stabilized for s in sub):
            continue
        try:
            fit = finite_difference_fit(sub)
        except InsufficientDataError:
            continue
        if fit.exact_on_window:
            return fit
    return None


def module_dimension(
    ideal: LeftIdealPresentation, config: DimensionConfig = DimensionConfig()
) -> tuple[int, HilbertFit]:
    """d(M) for M = D/I as the exact degree of the Hilbert fit.

    Raises ZeroModuleError when 1 reduces to zero (stabilized), and
    InconclusiveError when no exact stabilized fit appears within the
    sampling budget; a wrong number is never returned.
    """
    params = config.truncation_params()
    zero, zero_stabilized = is_zero_module(ideal, params)
    if zero and zero_stabilized:
        raise ZeroModuleError("1 lies in the ideal; M = D/I is the zero module")
    t_hi = min(config.initial_t, config.budget)
    while True:
        samples = hilbert_function(ideal, 0, t_hi, params)
        fit = scan_exact_fit(samples, config.fit_window)
        if fit is not None:
            if fit.degree is NEG_INF:
                raise ZeroModuleError("Hilbert function is identically zero")
            return int(fit.degree), fit
        if t_hi >= config.budget:
            raise InconclusiveError(
                f"no exact stabilized Hilbert fit up to t = {t_hi}; "
                "raise the budget or the slack"
            )
        t_hi = min(2 * t_hi, config.budget)


def multiplicity(fit: HilbertFit) -> Fraction:
    """Bernstein multiplicity e = d! * (coefficient of t^d in p).

    Since C(t, d) = t^d/d! + lower order, that coefficient is c_d/d!, so
    e equals the top binomial coefficient c_d.
    """
    if fit.degree is NEG_INF or fit.leading is None:
        raise ValueError("the zero polynomial has no multiplicity")
    return fit.leading


def fit_report(n: int, fit: HilbertFit) -> dict:
    """JSON-ready summary of a fit (rationals as strings, no runtimes)."""
    degree = None if fit.degree is NEG_INF else int(fit.degree)
    report = {
        "n": n,
        "samples": [[s.t, s.value] for s in fit.samples],
        "degree": degree,
        "leading": None if fit.leading is None else str(fit.leading),
        "multiplicity": None if degree is None else str(multiplicity(fit)),
        "exact": fit.exact_on_window,
        "stabilized": fit.all_stabilized,
    }
    return report
