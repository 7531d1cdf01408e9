"""Polarised pairs, divisors, and the average scalar curvatures derived from them.

A pair is reduced to its intersection-number shadow: the dimension n, the
top self-intersection L^n, and c1(X).L^(n-1). Those three numbers determine
S_1, S^D and S_beta, which every stability criterion consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionTooSmallError, InconsistentDataError, InputError

FINDING_NOT_AMPLE = "NotAmple"
FINDING_BOUND_VIOLATED = "ScalarBoundViolated"
FINDING_BOUND_SATURATED = "ScalarBoundSaturated"


@dataclass(frozen=True)
class PolarisedPair:
    """Intersection data of ((X, L); D).

    L_top is L^n and cX_L is c1(X).L^(n-1) = (-K_X).L^(n-1). When c1(X) is an
    exact rational multiple x of c1(L) (e.g. projective spaces, Fano pairs
    with L = -K_X), proportional_x records that coefficient; it then doubles
    as both nef thresholds lambda and Lambda.
    """

    name: str
    dimension: int
    L_top: Fraction
    cX_L: Fraction
    proportional_x: Fraction | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise InputError(f"dimension must be >= 1, got {self.dimension}")
        object.__setattr__(self, "L_top", Fraction(self.L_top))
        object.__setattr__(self, "cX_L", Fraction(self.cX_L))
        if self.L_top == 0:
            raise InputError("L_top must be nonzero")
        if self.proportional_x is not None:
            object.__setattr__(self, "proportional_x", Fraction(self.proportional_x))
            if self.cX_L != self.proportional_x * self.L_top:
                raise InconsistentDataError(
                    f"proportional_x={self.proportional_x} requires "
                    f"cX_L = x*L_top = {self.proportional_x * self.L_top}, got {self.cX_L}"
                )


@dataclass(frozen=True)
class DivisorSpec:
    """D in the linear system |mL|; assumed smooth."""

    m: int = 1
    smooth: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise InputError(f"divisor multiplicity must be >= 1, got {self.m}")


@dataclass(frozen=True)
class ScalarReport:
    """All scalar-curvature averages at one cone angle beta.

    SD is None when n = 1 (the divisor is zero-dimensional). Always satisfies
    Sbeta = S1 - m*n*(1 - beta) and mu = Sbeta / n.
    """

    S1: Fraction
    SD: Fraction | None
    Sbeta: Fraction
    mu: Fraction
    beta: Fraction
    m: int


def avg_scalar_s1(pair: PolarisedPair) -> Fraction:
    """Average scalar curvature of (X, L): n * cX_L / L_top."""
    return pair.dimension * pair.cX_L / pair.L_top


def avg_scalar_sD(pair: PolarisedPair, divisor: DivisorSpec) -> Fraction:
    """Average scalar curvature of the polarised divisor D in |mL|.

    Adjunction gives (n-1) * (S_1/n - m). The m = 1 case is the standard
    hypersurface formula; m > 1 is a derived extension and is labelled as
    such in reports.
    """
    n = pair.dimension
    if n < 2:
        raise DimensionTooSmallError("S^D needs n >= 2; the divisor is zero-dimensional for n = 1")
    return (n - 1) * (avg_scalar_s1(pair) / n - divisor.m)


def avg_scalar_sbeta(pair: PolarisedPair, divisor: DivisorSpec, beta: Fraction) -> ScalarReport:
    """Scalar averages for the cone angle 2*pi*beta: S_beta = S_1 - m*n*(1-beta)."""
    beta = Fraction(beta)
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    sD = avg_scalar_sD(pair, divisor) if n >= 2 else None
    sbeta = s1 - divisor.m * n * (1 - beta)
    return ScalarReport(S1=s1, SD=sD, Sbeta=sbeta, mu=sbeta / n, beta=beta, m=divisor.m)


def validate_pair(pair: PolarisedPair) -> list[str]:
    """Sanity findings; data violating S_1 <= n(n+1) cannot come from a manifold."""
    findings: list[str] = []
    if pair.L_top <= 0:
        findings.append(FINDING_NOT_AMPLE)
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    if s1 > n * (n + 1):
        findings.append(FINDING_BOUND_VIOLATED)
    elif s1 == n * (n + 1):
        findings.append(FINDING_BOUND_SATURATED)
    return findings


def sD_provenance(divisor: DivisorSpec) -> str:
    """Report tag distinguishing the m = 1 formula from the derived extension."""
    if divisor.m == 1:
        return "adjunction, D in |L|"
    return f"derived extension (m={divisor.m})"


@dataclass(frozen=True)
class CatalogEntry:
    pair: PolarisedPair
    divisor: DivisorSpec
    hilbert_kind: str | None  # key understood by weightoracle.builtin_model


CATALOG: dict[str, CatalogEntry] = {
    "P2-line": CatalogEntry(
        pair=PolarisedPair("P2-line", 2, Fraction(1), Fraction(3), Fraction(3)),
        divisor=DivisorSpec(1),
        hilbert_kind="projective_space",
    ),
    "P3-hyperplane": CatalogEntry(
        pair=PolarisedPair("P3-hyperplane", 3, Fraction(1), Fraction(4), Fraction(4)),
        divisor=DivisorSpec(1),
        hilbert_kind="projective_space",
    ),
    "P4-hyperplane": CatalogEntry(
        pair=PolarisedPair("P4-hyperplane", 4, Fraction(1), Fraction(5), Fraction(5)),
        divisor=DivisorSpec(1),
        hilbert_kind="projective_space",
    ),
    "P1xP1-diag": CatalogEntry(
        pair=PolarisedPair("P1xP1-diag", 2, Fraction(2), Fraction(4), Fraction(2)),
        divisor=DivisorSpec(1),
        hilbert_kind="product_p1p1",
    ),
    # Normalised shape of any Fano pair with L = -K_X: lambda = Lambda = 1 and
    # S_1 = n. Alpha invariants must be supplied by the user.
    "Fano-template": CatalogEntry(
        pair=PolarisedPair("Fano-template", 2, Fraction(1), Fraction(1), Fraction(1)),
        divisor=DivisorSpec(1),
        hilbert_kind=None,
    ),
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(
            f"unknown catalog pair {name!r}; available: {', '.join(CATALOG)}"
        ) from None
