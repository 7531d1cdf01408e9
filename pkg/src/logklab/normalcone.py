"""Deformation to the normal cone of D in |L|: exact expansion coefficients,
the closed-form log Donaldson-Futaki invariant, destabiliser search, and
critical-angle root isolation.

The family blows up X x C along D x {0} and polarises by L - cP for a
rational blow-up parameter c in (0, 1). Everything here is for divisor
multiplicity m = 1 only; m > 1 is refused rather than extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionTooSmallError,
    MultiplicityUnsupportedError,
    NotBelowThresholdError,
    ParameterOutOfRangeError,
    SearchExhaustedError,
)
from .pairmodel import PolarisedPair, avg_scalar_sD, DivisorSpec

_UNIT_DIVISOR = DivisorSpec(1)


@dataclass(frozen=True)
class NormalConeCoefficients:
    """Leading expansion coefficients of dim/weight sums for the family at c.

    d_k ~ a0 k^n + a1 k^(n-1), w_k ~ b0 k^(n+1) + b1 k^n, and the same for
    the restriction to the divisor part (a0_tilde, b0_tilde).
    """

    a0: Fraction
    a1: Fraction
    b0: Fraction
    b1: Fraction
    a0_tilde: Fraction
    b0_tilde: Fraction
    c: Fraction
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DimensionTooSmallError(f"normal-cone family needs n >= 2, got n={self.n}")
        if not (0 < self.c < 1):
            raise ParameterOutOfRangeError(f"blow-up parameter must satisfy 0 < c < 1, got {self.c}")

    def as_dict(self) -> dict[str, str | int]:
        return {
            "a0": str(self.a0),
            "a1": str(self.a1),
            "b0": str(self.b0),
            "b1": str(self.b1),
            "a0_tilde": str(self.a0_tilde),
            "b0_tilde": str(self.b0_tilde),
            "c": str(self.c),
            "n": self.n,
        }


@dataclass(frozen=True)
class DFReport:
    """Closed-form DF evaluation split into its certified-sign pieces.

    df = positive_prefactor * inner_factor exactly, with
    positive_prefactor > 0 for c in (0, 1); jna is the non-Archimedean
    J value of the same family.
    """

    df: Fraction
    inner_factor: Fraction
    positive_prefactor: Fraction
    jna: Fraction


@dataclass(frozen=True)
class CriticalBracket:
    """Isolating interval for the root of the inner factor.

    all_destabilizing marks the beta <= 0 degenerate case where every
    c in (0, 1) destabilises and no root exists; lo = hi = 0 then.
    """

    lo: Fraction
    hi: Fraction
    all_destabilizing: bool = False


def _require_unit_multiplicity(m: int) -> None:
    if m != 1:
        raise MultiplicityUnsupportedError(
            f"normal-cone results are only asserted for D in |L| (m = 1), got m={m}"
        )


def _require_c(c: Fraction) -> Fraction:
    c = Fraction(c)
    if not (0 < c < 1):
        raise ParameterOutOfRangeError(f"blow-up parameter must satisfy 0 < c < 1, got {c}")
    return c


def g_factor(n: int, c: Fraction) -> Fraction:
    """g(c) = 1 - ((n+1)/n) * (1-(1-c)^n) / (1-(1-c)^(n+1)).

    Strictly decreasing on (0, 1) with range (-1/n, 0); multiplies S^D/(n-1)
    inside the closed-form DF.
    """
    c = _require_c(c)
    u = 1 - c
    return 1 - Fraction(n + 1, n) * (1 - u**n) / (1 - u ** (n + 1))


def coefficients(pair: PolarisedPair, c: Fraction, m: int = 1) -> NormalConeCoefficients:
    """Exact a0, a1, b0, b1, a0_tilde, b0_tilde for the family at parameter c."""
    _require_unit_multiplicity(m)
    c = _require_c(c)
    n = pair.dimension
    if n < 2:
        raise DimensionTooSmallError(f"normal-cone family needs n >= 2, got n={n}")
    sD = avg_scalar_sD(pair, _UNIT_DIVISOR)
    a0 = pair.L_top / _factorial(n)
    a1 = Fraction(n, 2) * a0 * (sD / (n - 1) + 1)
    u = 1 - c
    b0 = ((1 - u ** (n + 1)) / (n + 1) - c) * a0
    b1 = Fraction(n, 2) * a0 * (-c + (sD / (n - 1)) * ((1 - u**n) / n - c))
    return NormalConeCoefficients(
        a0=a0,
        a1=a1,
        b0=b0,
        b1=b1,
        a0_tilde=n * a0,
        b0_tilde=-c * n * a0,
        c=c,
        n=n,
    )


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def df_from_coefficients(coeffs: NormalConeCoefficients, beta: Fraction) -> Fraction:
    """DF = 2(a1 b0 - a0 b1)/a0 + (1-beta)(a0 b0_tilde - a0_tilde b0)/a0."""
    beta = Fraction(beta)
    main = 2 * (coeffs.a1 * coeffs.b0 - coeffs.a0 * coeffs.b1) / coeffs.a0
    log_term = (coeffs.a0 * coeffs.b0_tilde - coeffs.a0_tilde * coeffs.b0) / coeffs.a0
    return main + (1 - beta) * log_term


def df_closed(pair: PolarisedPair, c: Fraction, beta: Fraction, m: int = 1) -> DFReport:
    """Closed-form DF of the family: prefactor(c) * (beta + (S^D/(n-1)) g(c)).

    beta may be any rational here; angle-range semantics live in the
    thresholds module. Computed without going through the coefficient
    formula so the two paths cross-check each other.
    """
    _require_unit_multiplicity(m)
    c = _require_c(c)
    beta = Fraction(beta)
    n = pair.dimension
    if n < 2:
        raise DimensionTooSmallError(f"normal-cone family needs n >= 2, got n={n}")
    sD = avg_scalar_sD(pair, _UNIT_DIVISOR)
    a0 = pair.L_top / _factorial(n)
    u = 1 - c
    prefactor = n * a0 * (1 - u ** (n + 1)) / (n + 1)
    inner = beta + (sD / (n - 1)) * g_factor(n, c)
    return DFReport(
        df=prefactor * inner,
        inner_factor=inner,
        positive_prefactor=prefactor,
        jna=jna_normal_cone(pair, c),
    )


def jna_normal_cone(pair: PolarisedPair, c: Fraction, m: int = 1) -> Fraction:
    """J^NA of the family: c - (1-(1-c)^(n+1))/(n+1), i.e. -b0/a0.

    Strictly positive on (0, 1); gated on exact agreement with the finite-k
    oracle limit before any release (see weightoracle and the acceptance
    suite).
    """
    _require_unit_multiplicity(m)
    c = _require_c(c)
    n = pair.dimension
    u = 1 - c
    return c - (1 - u ** (n + 1)) / (n + 1)


def instability_threshold(pair: PolarisedPair, m: int = 1) -> Fraction:
    """Angles strictly below S^D / (n(n-1)) are destabilised by this family."""
    _require_unit_multiplicity(m)
    n = pair.dimension
    if n < 2:
        raise DimensionTooSmallError(f"instability threshold needs n >= 2, got n={n}")
    return avg_scalar_sD(pair, _UNIT_DIVISOR) / (n * (n - 1))


def find_destabilizer(
    pair: PolarisedPair,
    beta: Fraction,
    tol: Fraction = Fraction(1, 2**60),
    m: int = 1,
) -> tuple[Fraction, Fraction]:
    """Witness c in (0, 1) with DF(c, beta) < 0, for beta below the threshold.

    Walks the dyadic schedule c = 1 - 2^-j, j = 1, 2, ...; the inner factor
    tends to beta - threshold < 0 as c -> 1, so the walk terminates. tol > 0
    floors the schedule: only steps with 2^-j >= tol are examined.
    """
    _require_unit_multiplicity(m)
    beta = Fraction(beta)
    tol = Fraction(tol)
    if tol <= 0:
        raise ParameterOutOfRangeError(f"tol must be positive, got {tol}")
    threshold = instability_threshold(pair)
    if beta >= threshold:
        raise NotBelowThresholdError(
            f"beta = {beta} is not below the instability threshold {threshold}; "
            "DF > 0 for every c in (0, 1)"
        )
    step = Fraction(1, 2)
    while step >= tol:
        c = 1 - step
        report = df_closed(pair, c, beta)
        if report.df < 0:
            return c, report.df
        step /= 2
    raise SearchExhaustedError(
        f"no destabilising c found before the dyadic step fell below tol = {tol}; "
        "decrease tol"
    )


def critical_c(
    pair: PolarisedPair,
    beta: Fraction,
    tol: Fraction,
    m: int = 1,
) -> CriticalBracket:
    """Isolate the unique root c* of the inner factor to width <= tol.

    Needs 0 < beta < threshold, which forces S^D > 0 and makes the inner
    factor strictly decreasing from beta (> 0) to beta - threshold (< 0);
    bisection keeps a strict sign change at the endpoints. beta <= 0 means
    every c destabilises: the (0, 0) sentinel with all_destabilizing is
    returned instead of a bracket.
    """
    _require_unit_multiplicity(m)
    beta = Fraction(beta)
    tol = Fraction(tol)
    if tol <= 0:
        raise ParameterOutOfRangeError(f"tol must be positive, got {tol}")
    threshold = instability_threshold(pair)
    if beta >= threshold:
        raise NotBelowThresholdError(
            f"beta = {beta} is not below the instability threshold {threshold}"
        )
    if beta <= 0:
        return CriticalBracket(Fraction(0), Fraction(0), all_destabilizing=True)

    def inner(c: Fraction) -> Fraction:
        return df_closed(pair, c, beta).inner_factor

    # Dyadic probes to seed the bracket: inner -> beta > 0 near 0 and
    # beta - threshold < 0 near 1.
    lo = Fraction(1, 2)
    while inner(lo) <= 0:
        lo /= 2
    step = Fraction(1, 2)
    while inner(1 - step) >= 0:
        step /= 2
    hi = 1 - step
    # inner is strictly decreasing here (S^D > 0), so lo < hi is automatic.

    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = inner(mid)
        if v > 0:
            lo = mid
        elif v < 0:
            hi = mid
        else:
            # Rational root hit exactly: a width-zero bracket is valid.
            return CriticalBracket(mid, mid)
    return CriticalBracket(lo, hi)


def curve(
    pair: PolarisedPair,
    beta: Fraction,
    steps: int,
    m: int = 1,
    map_fn=map,
) -> list[tuple[Fraction, DFReport]]:
    """DF reports on the uniform grid c = i/(steps+1), i = 1..steps.

    map_fn may be a parallel map; rows come back in grid order either way.
    """
    _require_unit_multiplicity(m)
    if steps < 1:
        raise ParameterOutOfRangeError(f"steps must be >= 1, got {steps}")
    beta = Fraction(beta)
    cs = [Fraction(i, steps + 1) for i in range(1, steps + 1)]
    return list(zip(cs, map_fn(lambda c: df_closed(pair, c, beta), cs)))
