"""Cone-angle thresholds, stability/existence windows, eta-feasibility
certificates, and singular-pair criteria checkers.

Everything here is one-sided: a verdict certifies stability/existence or
reports Inconclusive; instability claims belong exclusively to the
normalcone module. Positivity facts the criteria need (alpha invariants,
nef thresholds, klt/lc flags) are supplied by the caller, never computed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InconsistentAssertionsError,
    InconsistentDataError,
    InputError,
    MissingAlphaDataError,
    MissingPositivityDataError,
    PreconditionFailedError,
)
from .pairmodel import PolarisedPair, avg_scalar_s1

MODEL_PROPORTIONAL = "proportional"  # c1(X) = x * c1(L) exactly
MODEL_SANDWICH = "sandwich"          # lambda * c1(L) <= c1(X) <= Lambda * c1(L)

NO_CERTIFICATE_NEEDED = "no certificate needed"


@dataclass(frozen=True)
class PositivityData:
    """User-supplied positivity constants; the criteria treat them as known.

    lam/Lambda_up are the nef thresholds pinching c1(X) between multiples of
    c1(L). alpha_beta_override, when set, wins over the min-based lower bound.
    entropy_lower feeds the entropy-threshold comparison.
    """

    alpha_L: Fraction | None = None
    alpha_LD_restricted: Fraction | None = None
    lam: Fraction | None = None
    Lambda_up: Fraction | None = None
    alpha_beta_override: Fraction | None = None
    entropy_lower: Fraction | None = None

    def __post_init__(self):
        for name in ("alpha_L", "alpha_LD_restricted", "lam", "Lambda_up",
                     "alpha_beta_override", "entropy_lower"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, Fraction(value))
        for name in ("alpha_L", "alpha_LD_restricted", "alpha_beta_override"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InputError(f"{name} must be >= 0, got {value}")
        if self.lam is not None and self.Lambda_up is not None and self.lam > self.Lambda_up:
            raise InconsistentDataError(
                f"lambda = {self.lam} exceeds Lambda = {self.Lambda_up}"
            )


class VerdictStatus(enum.Enum):
    CRITERION_SATISFIED = "CriterionSatisfied"
    INCONCLUSIVE = "Inconclusive"
    PRECONDITION_FAILED = "PreconditionFailed"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one sufficient criterion, with its certificate.

    CriterionSatisfied always carries either a numeric certificate or the
    explicit no-certificate-needed marker; Inconclusive never asserts
    instability. facts echoes every caller-asserted positivity fact the
    criterion consumed.
    """

    status: VerdictStatus
    claim: str
    certificate: Fraction | None = None
    certificate_note: str | None = None
    violated: str | None = None
    facts: tuple[str, ...] = ()
    model: str | None = None
    eta_interval: tuple[Fraction, Fraction] | None = None


class WindowClaim(enum.Enum):
    EXISTENCE_CSCK_CONE = "ExistenceCscKCone"
    UNIFORM_LOG_K_STABLE = "UniformLogKStable"


@dataclass(frozen=True)
class AngleWindow:
    """Certified cone-angle interval; endpoint strictness follows the
    theorem statements exactly."""

    lower: Fraction
    lower_inclusive: bool
    upper: Fraction
    upper_inclusive: bool
    empty: bool
    claim: WindowClaim

    def __post_init__(self):
        if not self.empty:
            if not (0 <= self.lower and self.upper <= 1):
                raise InconsistentDataError(
                    f"window [{self.lower}, {self.upper}] escapes [0, 1]"
                )
            degenerate_ok = self.lower == self.upper and self.lower_inclusive and self.upper_inclusive
            if not (self.lower < self.upper or degenerate_ok):
                raise InconsistentDataError("nonempty window needs lower < upper")

    def contains(self, beta: Fraction) -> bool:
        if self.empty:
            return False
        beta = Fraction(beta)
        above = beta >= self.lower if self.lower_inclusive else beta > self.lower
        below = beta <= self.upper if self.upper_inclusive else beta < self.upper
        return above and below

    def render(self) -> str:
        if self.empty:
            return "(empty)"
        left = "[" if self.lower_inclusive else "("
        right = "]" if self.upper_inclusive else ")"
        return f"{left}{self.lower}, {self.upper}{right}"


def _make_window(lower, lower_inc, upper, upper_inc, claim) -> AngleWindow:
    lower, upper = Fraction(lower), Fraction(upper)
    nonempty = lower < upper or (lower == upper and lower_inc and upper_inc)
    return AngleWindow(lower, lower_inc, upper, upper_inc, not nonempty, claim)


class ExistenceCase(enum.Enum):
    LARGE_M = "large"
    GIVEN_M = "given"


def effective_nef_bounds(pair: PolarisedPair, pos: PositivityData) -> tuple[Fraction, Fraction, str]:
    """(lambda, Lambda, model) actually in force for this pair.

    An exact proportionality coefficient x gives lambda = Lambda = x; a
    supplied lambda/Lambda pair must then agree with it.
    """
    if pair.proportional_x is not None:
        x = pair.proportional_x
        for name, value in (("lambda", pos.lam), ("Lambda", pos.Lambda_up)):
            if value is not None and value != x:
                raise InconsistentDataError(
                    f"pair is exactly proportional with x = {x} but {name} = {value} was supplied"
                )
        return x, x, MODEL_PROPORTIONAL
    if pos.lam is None or pos.Lambda_up is None:
        raise MissingPositivityDataError(
            "need nef thresholds lambda and Lambda (or an exact proportional_x on the pair)"
        )
    return pos.lam, pos.Lambda_up, MODEL_SANDWICH


def _require_angle(beta: Fraction, allow_one: bool = True, allow_zero: bool = False) -> Fraction:
    beta = Fraction(beta)
    low_ok = beta >= 0 if allow_zero else beta > 0
    high_ok = beta <= 1 if allow_one else beta < 1
    if not (low_ok and high_ok):
        raise InputError(f"cone angle parameter beta = {beta} outside the admissible range")
    return beta


def _min_alpha(pos: PositivityData, m: int) -> Fraction:
    if pos.alpha_L is None or pos.alpha_LD_restricted is None:
        raise MissingAlphaDataError(
            "need alpha_L and alpha_LD_restricted (or alpha_beta_override where accepted)"
        )
    return min(pos.alpha_L, m * pos.alpha_LD_restricted)


def alpha_beta_lower_bound(pos: PositivityData, m: int, beta: Fraction) -> Fraction:
    """Lower bound min{m*beta, alpha_L, m*alpha_LD_restricted} for the log
    alpha invariant; a direct alpha_beta_override wins when present."""
    beta = _require_angle(beta)
    if pos.alpha_beta_override is not None:
        return pos.alpha_beta_override
    return min(m * beta, _min_alpha(pos, m))


def beta_u(pair: PolarisedPair, pos: PositivityData, m: int) -> Fraction:
    """Critical cone angle
    min{1, (n+1)/n * min{alpha_L, m*alpha_LD}/m + 1 - S_1/(m n)}, clamped at 0."""
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    raw = Fraction(n + 1, n) * _min_alpha(pos, m) / m + 1 - s1 / (m * n)
    return max(Fraction(0), min(Fraction(1), raw))


def uniform_stability_window(pair: PolarisedPair, pos: PositivityData, m: int) -> AngleWindow:
    """Uniform log K-stability window [1 - ((n+1)lambda - S_1)/m, beta_u).

    Hypotheses S_1 <= m n and (n+1)lambda <= S_1 + m are checked first; the
    second one also forces the lower endpoint to be >= 0.
    """
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    lam, _, _ = effective_nef_bounds(pair, pos)
    if s1 > m * n:
        raise PreconditionFailedError(f"S_1 = {s1} > m*n = {m * n}")
    if (n + 1) * lam > s1 + m:
        raise PreconditionFailedError(
            f"(n+1)*lambda = {(n + 1) * lam} > S_1 + m = {s1 + m}"
        )
    lower = 1 - ((n + 1) * lam - s1) / m
    upper = beta_u(pair, pos, m)
    return _make_window(lower, True, upper, False, WindowClaim.UNIFORM_LOG_K_STABLE)


def existence_window(
    pair: PolarisedPair, pos: PositivityData, m: int, case: ExistenceCase
) -> AngleWindow:
    """cscK-cone existence window (0, upper] for the chosen case.

    Large-m case: needs S_1 < m n + (n-1)lambda and Lambda < m (strict);
    upper = min{1, 1 - Lambda/m, 1 - (S_1 - (n-1)lambda)/(m n)}.
    Given-m case: needs S_1 <= m n and Lambda <= S_1/n <= lambda + m(1 - beta_u);
    upper = beta_u.
    """
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    lam, Lam, _ = effective_nef_bounds(pair, pos)
    if case is ExistenceCase.LARGE_M:
        if not s1 < m * n + (n - 1) * lam:
            raise PreconditionFailedError(
                f"S_1 = {s1} not < m*n + (n-1)*lambda = {m * n + (n - 1) * lam}"
            )
        if not Lam < m:
            raise PreconditionFailedError(f"Lambda = {Lam} not < m = {m}")
        upper = min(Fraction(1), 1 - Lam / m, 1 - (s1 - (n - 1) * lam) / (m * n))
    elif case is ExistenceCase.GIVEN_M:
        if s1 > m * n:
            raise PreconditionFailedError(f"S_1 = {s1} > m*n = {m * n}")
        bu = beta_u(pair, pos, m)
        mu_bar = s1 / Fraction(n)
        if not Lam <= mu_bar:
            raise PreconditionFailedError(f"Lambda = {Lam} not <= S_1/n = {mu_bar}")
        if not mu_bar <= lam + m * (1 - bu):
            raise PreconditionFailedError(
                f"S_1/n = {mu_bar} not <= lambda + m(1 - beta_u) = {lam + m * (1 - bu)}"
            )
        upper = bu
    else:  # pragma: no cover - enum is exhaustive
        raise InputError(f"unknown existence case {case!r}")
    return _make_window(Fraction(0), False, upper, True, WindowClaim.EXISTENCE_CSCK_CONE)


def eta_feasibility(
    pair: PolarisedPair, pos: PositivityData, m: int, beta: Fraction
) -> Verdict:
    """Feasibility of the coercivity constant eta at angle beta.

    The three conditions reduce to linear bounds on eta: eta >= 0,
    eta > up_c1 - m(1-beta)              (c1(X, D) below eta*c1(L)),
    eta > S_beta - (n-1)(lo_c1 - m(1-beta))   (third condition),
    eta < (n+1) alpha_beta / n.
    In the exact proportional model lo_c1 = up_c1 = x; otherwise the
    conservative lambda/Lambda sandwich bounds are used. The certificate is
    the midpoint of the feasible interval.
    """
    beta = _require_angle(beta)
    lo_c1, up_c1, model = effective_nef_bounds(pair, pos)
    alpha_beta = alpha_beta_lower_bound(pos, m, beta)
    n = pair.dimension
    s_beta = avg_scalar_s1(pair) - m * n * (1 - beta)

    bound_ii = up_c1 - m * (1 - beta)
    bound_iii = s_beta - (n - 1) * (lo_c1 - m * (1 - beta))
    upper = Fraction(n + 1, n) * alpha_beta
    strict_lower = max(bound_ii, bound_iii)
    facts = (
        f"alpha_beta >= {alpha_beta}",
        f"c1 bounds: [{lo_c1}, {up_c1}] ({model})",
        f"S_beta = {s_beta}",
    )
    claim = "log K-energy coercive: cscK cone metric exists and pair is uniformly log K-stable"
    if upper <= 0:
        return Verdict(
            status=VerdictStatus.INCONCLUSIVE,
            claim=claim,
            violated=f"eta upper bound (n+1)*alpha_beta/n = {upper} admits no eta >= 0",
            facts=facts,
            model=model,
        )
    if strict_lower >= upper:
        source = "c1(X,D) bound" if bound_ii >= bound_iii else "third condition bound"
        return Verdict(
            status=VerdictStatus.INCONCLUSIVE,
            claim=claim,
            violated=(
                f"required eta > {strict_lower} (from {source}) meets the cap "
                f"eta < {upper}: empty interval"
            ),
            facts=facts,
            model=model,
        )
    interval_lo = max(Fraction(0), strict_lower)
    certificate = (interval_lo + upper) / 2
    return Verdict(
        status=VerdictStatus.CRITERION_SATISFIED,
        claim=claim,
        certificate=certificate,
        certificate_note=f"midpoint of feasible eta interval ({interval_lo}, {upper})",
        facts=facts,
        model=model,
        eta_interval=(interval_lo, upper),
    )


def min_multiplicity_eta0(pair: PolarisedPair, pos: PositivityData, beta: Fraction) -> int:
    """Least m making both eta = 0 conditions strict:
    Lambda - m(1-beta) < 0 and S_1 - m n (1-beta) - (n-1)lambda < 0."""
    beta = _require_angle(beta, allow_one=False)
    lam, Lam, _ = effective_nef_bounds(pair, pos)
    n = pair.dimension
    s1 = avg_scalar_s1(pair)
    one_minus = 1 - beta
    # least integer strictly above each rational bound
    bound_a = Lam / one_minus
    bound_b = (s1 - (n - 1) * lam) / (n * one_minus)
    m = max(_strictly_above(bound_a), _strictly_above(bound_b), 1)
    return m


def _strictly_above(q: Fraction) -> int:
    floor = q.numerator // q.denominator
    return floor + 1


def entropy_threshold_check(
    pair: PolarisedPair, pos: PositivityData, m: int, beta: Fraction
) -> Verdict:
    """Entropy/J-threshold comparison: coercive if e > max{Lambda, S_beta - (n-1)lambda}.

    The default lower bound for the entropy threshold is (n+1) alpha_beta / n;
    pos.entropy_lower overrides it when supplied.
    """
    beta = _require_angle(beta)
    lam, Lam, model = effective_nef_bounds(pair, pos)
    n = pair.dimension
    s_beta = avg_scalar_s1(pair) - m * n * (1 - beta)
    if pos.entropy_lower is not None:
        e_lower = pos.entropy_lower
        e_source = "user entropy_lower"
    else:
        e_lower = Fraction(n + 1, n) * alpha_beta_lower_bound(pos, m, beta)
        e_source = "(n+1)*alpha_beta/n"
    rhs = max(Lam, s_beta - (n - 1) * lam)
    facts = (f"e >= {e_lower} ({e_source})", f"max{{Lambda, S_beta - (n-1)*lambda}} = {rhs}")
    claim = "log K-energy coercive via entropy threshold; cscK cone metric exists"
    if e_lower > rhs:
        return Verdict(
            status=VerdictStatus.CRITERION_SATISFIED,
            claim=claim,
            certificate=e_lower,
            certificate_note="entropy lower bound exceeding the J-threshold bound",
            facts=facts,
            model=model,
        )
    return Verdict(
        status=VerdictStatus.INCONCLUSIVE,
        claim=claim,
        violated=f"entropy lower bound {e_lower} not > {rhs}",
        facts=facts,
        model=model,
    )


@dataclass(frozen=True)
class SingularCriteriaInput:
    """Caller-asserted facts about a (possibly singular) pair (X, (1-beta)*Delta).

    Boolean fields are assertions the caller takes responsibility for; they
    are echoed verbatim into the verdict's facts. A criterion is evaluated
    only when its distinguishing assertion is present.
    """

    Sbeta: Fraction
    alpha_beta: Fraction
    n: int
    is_lc: bool = False
    is_klt: bool = False
    is_logCY: bool = False
    bullet1_eta: Fraction | None = None
    eta_class_ample: bool = False
    third_class_ample: bool = False
    bullet2_nef: bool = False
    corollary_neg: bool = False
    corollary_nef: bool = False
    klt_inv_semistable: bool = False
    klt_inv_ample: bool = False
    klt_inv_nef: bool = False

    def __post_init__(self):
        object.__setattr__(self, "Sbeta", Fraction(self.Sbeta))
        object.__setattr__(self, "alpha_beta", Fraction(self.alpha_beta))
        if self.alpha_beta < 0:
            raise InputError(f"alpha_beta must be >= 0, got {self.alpha_beta}")
        if self.n < 1:
            raise InputError(f"dimension must be >= 1, got {self.n}")
        if self.bullet1_eta is not None:
            object.__setattr__(self, "bullet1_eta", Fraction(self.bullet1_eta))
        if self.is_klt and not self.is_lc:
            raise InconsistentAssertionsError("is_klt asserted without is_lc (klt implies lc)")


UNIFORM_STABLE = "(X, L; Delta) is uniformly log K-stable with angle 2*pi*beta"
KLT_CONCLUSION = "(X, (1-beta)*Delta) is Kawamata log terminal"


def _satisfied(claim: str, via: str, facts: tuple[str, ...],
               certificate: Fraction | None = None,
               certificate_note: str | None = None) -> Verdict:
    return Verdict(
        status=VerdictStatus.CRITERION_SATISFIED,
        claim=f"{claim} [via {via}]",
        certificate=certificate,
        certificate_note=certificate_note if certificate_note else (
            None if certificate is not None else NO_CERTIFICATE_NEEDED),
        facts=facts,
    )


def _inconclusive(claim: str, via: str, violated: str, facts: tuple[str, ...]) -> Verdict:
    return Verdict(
        status=VerdictStatus.INCONCLUSIVE,
        claim=f"{claim} [via {via}]",
        violated=violated,
        facts=facts,
    )


def singular_criteria(data: SingularCriteriaInput) -> list[Verdict]:
    """Evaluate every applicable sufficient criterion for the singular pair.

    One verdict per criterion whose distinguishing assertion is present;
    each CriterionSatisfied names the criterion and echoes the asserted
    facts it consumed. Never asserts instability.
    """
    verdicts: list[Verdict] = []
    n = data.n

    if data.is_logCY:
        via = "log Calabi-Yau criterion"
        facts = ("asserted: K_X + (1-beta)*Delta numerically trivial",
                 f"asserted: klt = {data.is_klt}")
        if data.is_klt:
            verdicts.append(_satisfied(UNIFORM_STABLE, via, facts))
        else:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "klt not asserted", facts))

    if data.bullet1_eta is not None:
        via = "negative-S_beta eta criterion"
        eta = data.bullet1_eta
        cap = Fraction(n + 1, n) * data.alpha_beta
        facts = (
            f"asserted: lc = {data.is_lc}",
            f"eta = {eta}",
            f"asserted: eta*L + K_X + (1-beta)*Delta ample = {data.eta_class_ample}",
            f"asserted: -(n-1)(K_X + (1-beta)*Delta) - (S_beta - eta)*L ample = {data.third_class_ample}",
        )
        if not data.is_lc:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "lc not asserted", facts))
        elif not data.Sbeta < 0:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, f"S_beta = {data.Sbeta} not < 0", facts))
        elif not (0 <= eta < cap):
            verdicts.append(_inconclusive(
                UNIFORM_STABLE, via, f"eta = {eta} not in [0, (n+1)*alpha_beta/n = {cap})", facts))
        elif not data.eta_class_ample:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "eta-class ampleness not asserted", facts))
        elif not data.third_class_ample:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "third-class ampleness not asserted", facts))
        else:
            verdicts.append(_satisfied(UNIFORM_STABLE, via, facts, certificate=eta,
                                       certificate_note="feasible eta supplied by caller"))

    if data.bullet2_nef:
        via = "nef comparison criterion"
        cap = (n + 1) * data.alpha_beta
        facts = (
            f"asserted: lc = {data.is_lc}",
            "asserted: -S_beta*L - (n+1)(K_X + (1-beta)*Delta) nef",
            f"S_beta = {data.Sbeta}, (n+1)*alpha_beta = {cap}",
        )
        if not data.is_lc:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "lc not asserted", facts))
        elif not data.Sbeta < cap:
            verdicts.append(_inconclusive(
                UNIFORM_STABLE, via, f"S_beta = {data.Sbeta} not < (n+1)*alpha_beta = {cap}", facts))
        else:
            verdicts.append(_satisfied(UNIFORM_STABLE, via, facts))

    if data.corollary_neg or data.corollary_nef:
        via = "negative first-Chern-class corollary"
        facts = (
            f"asserted: lc = {data.is_lc}",
            f"asserted: c1(X, Delta) < 0 = {data.corollary_neg}",
            f"asserted: -S_beta*L + n*c1(X, Delta) nef = {data.corollary_nef}",
        )
        if not data.corollary_neg:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "c1(X, Delta) < 0 not asserted", facts))
        elif not data.corollary_nef:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "nef combination not asserted", facts))
        elif not data.is_lc:
            verdicts.append(_inconclusive(UNIFORM_STABLE, via, "lc not asserted", facts))
        else:
            verdicts.append(_satisfied(UNIFORM_STABLE, via, facts))

    if data.klt_inv_semistable or data.klt_inv_ample or data.klt_inv_nef:
        via = "klt from semistability criterion"
        facts = (
            f"asserted: log K-semistable with angle 2*pi*beta = {data.klt_inv_semistable}",
            f"asserted: c1(X, Delta) > 0 = {data.klt_inv_ample}",
            f"asserted: stated nef combination of S_beta*L and c1(X, Delta) = {data.klt_inv_nef}",
        )
        missing = [
            label
            for label, ok in (
                ("log K-semistability", data.klt_inv_semistable),
                ("c1(X, Delta) > 0", data.klt_inv_ample),
                ("nef combination", data.klt_inv_nef),
            )
            if not ok
        ]
        if missing:
            verdicts.append(_inconclusive(KLT_CONCLUSION, via, f"{missing[0]} not asserted", facts))
        else:
            verdicts.append(_satisfied(KLT_CONCLUSION, via, facts))

    return verdicts
