"""Command-line front end: pair ingestion, builtin catalog, reports, curves.

Exit codes: 0 success / criterion satisfied, 2 inconclusive / precondition
failed, 3 input error, 4 internal cross-check failure (never on a correct
build). Output never contains timestamps, so identical invocations produce
byte-identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import normalcone, pairmodel, thresholds, weightoracle
from .errors import (
    InputError,
    InternalCheckError,
    LogKLabError,
    PreconditionFailedError,
)
from .exactnum import Polynomial, decimal_string, format_rational, parse_rational
from .pairmodel import DivisorSpec, PolarisedPair
from .thresholds import (
    ExistenceCase,
    PositivityData,
    SingularCriteriaInput,
    Verdict,
    VerdictStatus,
)
from .weightoracle import HilbertModel

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

CATALOG_PREFIX = "catalog:"


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str):
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(self, message)


@dataclass(frozen=True)
class ReportRow:
    label: str
    exact: Fraction | str
    provenance: str

    def render(self) -> str:
        if isinstance(self.exact, str):
            exact_s, dec_s = self.exact, ""
        else:
            exact_s = format_rational(self.exact)
            dec_s = decimal_string(self.exact)
        return f"{self.label:<34} {exact_s:>20}  {dec_s:<18} {self.provenance}"


def _print_rows(rows: list[ReportRow]) -> None:
    header = f"{'quantity':<34} {'exact':>20}  {'decimal':<18} {'provenance'}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(row.render())


@dataclass(frozen=True)
class PairFile:
    """A resolved pair source: catalog entry or strict JSON file."""

    source: str
    pair: PolarisedPair
    divisor: DivisorSpec
    positivity: PositivityData | None
    model: HilbertModel | None


def _reject_unknown(block: dict, allowed: set[str], where: str) -> None:
    unknown = set(block) - allowed
    if unknown:
        raise InputError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _parse_positivity_block(block: dict) -> PositivityData:
    allowed = {"alpha_L", "alpha_LD_restricted", "lambda", "Lambda",
               "alpha_beta_override", "entropy_lower"}
    _reject_unknown(block, allowed, "positivity block")

    def get(key):
        return parse_rational(str(block[key])) if key in block else None

    return PositivityData(
        alpha_L=get("alpha_L"),
        alpha_LD_restricted=get("alpha_LD_restricted"),
        lam=get("lambda"),
        Lambda_up=get("Lambda"),
        alpha_beta_override=get("alpha_beta_override"),
        entropy_lower=get("entropy_lower"),
    )


def _parse_hilbert_block(block: dict, pair: PolarisedPair) -> HilbertModel:
    _reject_unknown(block, {"kind", "coefficients", "floor"}, "hilbert block")
    kind = block.get("kind")
    if kind == weightoracle.KIND_PROJECTIVE_SPACE:
        return HilbertModel.projective_space(pair.dimension)
    if kind == weightoracle.KIND_PRODUCT_P1P1:
        return HilbertModel.product_p1p1()
    if kind == weightoracle.KIND_EXPLICIT:
        if "coefficients" not in block:
            raise InputError("explicit hilbert block needs 'coefficients'")
        coeffs = [parse_rational(str(c)) for c in block["coefficients"]]
        floor = int(block.get("floor", 0))
        return HilbertModel.explicit(Polynomial(coeffs), floor)
    raise InputError(
        f"unknown hilbert kind {kind!r}; expected one of "
        f"{weightoracle.KIND_PROJECTIVE_SPACE}, {weightoracle.KIND_PRODUCT_P1P1}, "
        f"{weightoracle.KIND_EXPLICIT}"
    )


def load_pair_file(path: str) -> PairFile:
    """Parse a pair JSON file with a strict schema (unknown keys rejected)."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read pair file {path!r}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"pair file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"pair file {path!r} must hold a JSON object")
    allowed = {"name", "dimension", "L_top", "cX_L", "proportional_x",
               "divisor", "positivity", "hilbert"}
    _reject_unknown(doc, allowed, "pair file")
    for key in ("name", "dimension", "L_top", "cX_L", "divisor"):
        if key not in doc:
            raise InputError(f"pair file {path!r} is missing required key {key!r}")
    if not isinstance(doc["dimension"], int):
        raise InputError("'dimension' must be an integer")
    pair = PolarisedPair(
        name=str(doc["name"]),
        dimension=doc["dimension"],
        L_top=parse_rational(str(doc["L_top"])),
        cX_L=parse_rational(str(doc["cX_L"])),
        proportional_x=(
            parse_rational(str(doc["proportional_x"])) if "proportional_x" in doc else None
        ),
    )
    div_block = doc["divisor"]
    if not isinstance(div_block, dict):
        raise InputError("'divisor' must be an object like {\"m\": 1}")
    _reject_unknown(div_block, {"m", "smooth"}, "divisor block")
    if "m" not in div_block or not isinstance(div_block["m"], int):
        raise InputError("divisor block needs an integer 'm'")
    divisor = DivisorSpec(m=div_block["m"], smooth=bool(div_block.get("smooth", True)))
    positivity = (
        _parse_positivity_block(doc["positivity"]) if "positivity" in doc else None
    )
    model = _parse_hilbert_block(doc["hilbert"], pair) if "hilbert" in doc else None
    return PairFile(source=path, pair=pair, divisor=divisor, positivity=positivity, model=model)


def builtin_model(entry: pairmodel.CatalogEntry) -> HilbertModel | None:
    if entry.hilbert_kind == weightoracle.KIND_PROJECTIVE_SPACE:
        return HilbertModel.projective_space(entry.pair.dimension)
    if entry.hilbert_kind == weightoracle.KIND_PRODUCT_P1P1:
        return HilbertModel.product_p1p1()
    return None


def resolve_pair(source: str) -> PairFile:
    """Resolve "catalog:NAME" to a builtin, anything else to a JSON file."""
    if source.startswith(CATALOG_PREFIX):
        name = source[len(CATALOG_PREFIX):]
        entry = pairmodel.catalog_entry(name)
        return PairFile(
            source=source,
            pair=entry.pair,
            divisor=entry.divisor,
            positivity=None,
            model=builtin_model(entry),
        )
    return load_pair_file(source)


def _grid_map(fn, items):
    """Sequential or thread-pooled map; order-preserving either way."""
    threads_raw = os.environ.get("LOGKLAB_THREADS", "1")
    try:
        threads = int(threads_raw)
    except ValueError:
        raise InputError(f"LOGKLAB_THREADS must be an integer, got {threads_raw!r}")
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _merged_positivity(pf: PairFile, ns: argparse.Namespace) -> PositivityData:
    base = pf.positivity if pf.positivity is not None else PositivityData()
    overrides = {}
    for attr, field in (
        ("alpha_L", "alpha_L"),
        ("alpha_LD", "alpha_LD_restricted"),
        ("lam", "lam"),
        ("Lambda_up", "Lambda_up"),
        ("alpha_beta", "alpha_beta_override"),
        ("entropy_lower", "entropy_lower"),
    ):
        value = getattr(ns, attr, None)
        if value is not None:
            overrides[field] = value
    return replace(base, **overrides) if overrides else base


def _divisor_for(pf: PairFile, ns: argparse.Namespace) -> DivisorSpec:
    m = getattr(ns, "m", None)
    return DivisorSpec(m=m) if m is not None else pf.divisor


def _verdict_lines(v: Verdict) -> list[str]:
    lines = [f"status: {v.status.value}", f"claim: {v.claim}"]
    if v.model is not None:
        lines.append(f"positivity model: {v.model}")
    if v.eta_interval is not None:
        lines.append(f"eta interval: ({v.eta_interval[0]}, {v.eta_interval[1]})")
    if v.certificate is not None:
        lines.append(f"certificate: {v.certificate}")
    if v.certificate_note is not None:
        lines.append(f"certificate note: {v.certificate_note}")
    if v.violated is not None:
        lines.append(f"violated: {v.violated}")
    for fact in v.facts:
        lines.append(f"fact: {fact}")
    return lines


def _verdict_exit(v: Verdict) -> int:
    return EXIT_OK if v.status is VerdictStatus.CRITERION_SATISFIED else EXIT_INCONCLUSIVE


# ----------------------------- subcommands -----------------------------


def _cmd_info(ns) -> int:
    pf = resolve_pair(ns.pair)
    pair, divisor = pf.pair, pf.divisor
    print(f"pair: {pair.name} (n={pair.dimension}, L^n={pair.L_top}, "
          f"c1(X).L^(n-1)={pair.cX_L}, D in |{divisor.m}L|)")
    findings = pairmodel.validate_pair(pair)
    print(f"findings: {', '.join(findings) if findings else 'none'}")
    rows = [ReportRow("S_1", pairmodel.avg_scalar_s1(pair), "n*cX_L/L_top")]
    if pair.dimension >= 2:
        rows.append(ReportRow("S_D", pairmodel.avg_scalar_sD(pair, divisor),
                              pairmodel.sD_provenance(divisor)))
        if divisor.m == 1:
            rows.append(ReportRow(
                "instability_threshold",
                normalcone.instability_threshold(pair),
                "S_D/(n(n-1)); smaller angles destabilised by the normal-cone family",
            ))
        else:
            rows.append(ReportRow("instability_threshold", "n/a",
                                  "normal-cone family only asserted for m = 1"))
    else:
        rows.append(ReportRow("S_D", "n/a", "undefined for n = 1"))
    _print_rows(rows)
    return EXIT_OK


def _cmd_scalar(ns) -> int:
    pf = resolve_pair(ns.pair)
    divisor = _divisor_for(pf, ns)
    report = pairmodel.avg_scalar_sbeta(pf.pair, divisor, ns.beta)
    rows = [
        ReportRow("beta", report.beta, "evaluation angle"),
        ReportRow("S_1", report.S1, "n*cX_L/L_top"),
        ReportRow("S_D", report.SD if report.SD is not None else "n/a",
                  pairmodel.sD_provenance(divisor) if report.SD is not None else "undefined for n = 1"),
        ReportRow("S_beta", report.Sbeta, "S_1 - m*n*(1-beta)"),
        ReportRow("mu", report.mu, "S_beta/n"),
    ]
    _print_rows(rows)
    return EXIT_OK


def _cmd_thresholds(ns) -> int:
    pf = resolve_pair(ns.pair)
    divisor = _divisor_for(pf, ns)
    pos = _merged_positivity(pf, ns)
    m = divisor.m
    rows = [ReportRow("beta_u", thresholds.beta_u(pf.pair, pos, m),
                      "critical cone angle from alpha data")]
    for beta in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        rows.append(ReportRow(
            f"alpha_beta_lower(beta={beta})",
            thresholds.alpha_beta_lower_bound(pos, m, beta),
            "min{m*beta, alpha_L, m*alpha_LD}",
        ))
    rows.append(ReportRow(
        f"min_multiplicity_eta0(beta={ns.beta})",
        Fraction(thresholds.min_multiplicity_eta0(pf.pair, pos, ns.beta)),
        "least m with both eta=0 conditions strict",
    ))
    _print_rows(rows)
    return EXIT_OK


_CASES = {
    "large": ExistenceCase.LARGE_M,
    "given": ExistenceCase.GIVEN_M,
}


def _cmd_window(ns) -> int:
    pf = resolve_pair(ns.pair)
    pos = _merged_positivity(pf, ns)
    m = _divisor_for(pf, ns).m
    try:
        if ns.case == "uniform":
            window = thresholds.uniform_stability_window(pf.pair, pos, m)
        else:
            window = thresholds.existence_window(pf.pair, pos, m, _CASES[ns.case])
    except PreconditionFailedError as exc:
        print(f"PreconditionFailed: {exc.violated}")
        return EXIT_INCONCLUSIVE
    print(f"claim: {window.claim.value}")
    print(f"window: {window.render()}")
    if window.empty:
        print("note: hypotheses hold but the window is empty; nothing is certified")
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_eta(ns) -> int:
    pf = resolve_pair(ns.pair)
    pos = _merged_positivity(pf, ns)
    m = _divisor_for(pf, ns).m
    verdict = thresholds.eta_feasibility(pf.pair, pos, m, ns.beta)
    for line in _verdict_lines(verdict):
        print(line)
    return _verdict_exit(verdict)


def _cmd_entropy(ns) -> int:
    pf = resolve_pair(ns.pair)
    pos = _merged_positivity(pf, ns)
    m = _divisor_for(pf, ns).m
    verdict = thresholds.entropy_threshold_check(pf.pair, pos, m, ns.beta)
    for line in _verdict_lines(verdict):
        print(line)
    return _verdict_exit(verdict)


def _cmd_df(ns) -> int:
    pf = resolve_pair(ns.pair)
    if pf.divisor.m != 1:
        raise InputError("df needs a pair with divisor multiplicity m = 1")
    pair = pf.pair
    coeffs = normalcone.coefficients(pair, ns.c)
    report = normalcone.df_closed(pair, ns.c, ns.beta)
    df_coeff_path = normalcone.df_from_coefficients(coeffs, ns.beta)
    if df_coeff_path != report.df or report.df != report.positive_prefactor * report.inner_factor:
        raise InternalCheckError(
            f"DF paths disagree: closed form {report.df}, coefficient formula {df_coeff_path}"
        )
    rows = [
        ReportRow("a0", coeffs.a0, "leading dimension coefficient"),
        ReportRow("a1", coeffs.a1, "subleading dimension coefficient"),
        ReportRow("b0", coeffs.b0, "leading weight coefficient"),
        ReportRow("b1", coeffs.b1, "subleading weight coefficient"),
        ReportRow("a0_tilde", coeffs.a0_tilde, "divisor dimension leading coefficient"),
        ReportRow("b0_tilde", coeffs.b0_tilde, "divisor weight leading coefficient"),
        ReportRow("DF(closed form)", report.df, "prefactor * inner factor"),
        ReportRow("DF(coefficient formula)", df_coeff_path,
                  "2(a1 b0 - a0 b1)/a0 + (1-beta)(a0 b0~ - a0~ b0)/a0"),
        ReportRow("inner_factor", report.inner_factor, "beta + (S_D/(n-1)) g(c)"),
        ReportRow("positive_prefactor", report.positive_prefactor,
                  "n a0 (1-(1-c)^(n+1))/(n+1)"),
        ReportRow("J^NA", report.jna, "c - (1-(1-c)^(n+1))/(n+1) = -b0/a0"),
    ]
    _print_rows(rows)
    print("cross-check: both DF paths agree exactly")
    return EXIT_OK


def _curve_payload(pf: PairFile, beta: Fraction, steps: int):
    if pf.divisor.m != 1:
        raise InputError("df-curve needs a pair with divisor multiplicity m = 1")
    return normalcone.curve(pf.pair, beta, steps, map_fn=lambda f, xs: _grid_map(f, xs))


def _cmd_df_curve(ns) -> int:
    pf = resolve_pair(ns.pair)
    rows = _curve_payload(pf, ns.beta, ns.steps)
    if ns.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow([
            "c", "df", "inner_factor", "jna",
            "c_decimal", "df_decimal", "inner_factor_decimal", "jna_decimal",
        ])
        for c, rep in rows:
            writer.writerow([
                format_rational(c), format_rational(rep.df),
                format_rational(rep.inner_factor), format_rational(rep.jna),
                decimal_string(c), decimal_string(rep.df),
                decimal_string(rep.inner_factor), decimal_string(rep.jna),
            ])
    else:
        payload = [
            {
                "c": format_rational(c),
                "df": format_rational(rep.df),
                "inner_factor": format_rational(rep.inner_factor),
                "jna": format_rational(rep.jna),
            }
            for c, rep in rows
        ]
        print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_destabilize(ns) -> int:
    pf = resolve_pair(ns.pair)
    if pf.divisor.m != 1:
        raise InputError("destabilize needs a pair with divisor multiplicity m = 1")
    c, df = normalcone.find_destabilizer(pf.pair, ns.beta, ns.tol)
    threshold = normalcone.instability_threshold(pf.pair)
    print(f"instability threshold: {threshold}")
    print(f"witness c: {c}")
    print(f"DF(c, beta={ns.beta}) = {df} < 0: pair is log K-unstable at this angle")
    return EXIT_OK


def _cmd_critical_c(ns) -> int:
    pf = resolve_pair(ns.pair)
    if pf.divisor.m != 1:
        raise InputError("critical-c needs a pair with divisor multiplicity m = 1")
    bracket = normalcone.critical_c(pf.pair, ns.beta, ns.tol)
    if bracket.all_destabilizing:
        print("every c in (0, 1) destabilises at this angle (beta <= 0); sentinel (0, 0)")
        return EXIT_OK
    print(f"isolating interval: [{bracket.lo}, {bracket.hi}]")
    print(f"width: {bracket.hi - bracket.lo} (<= tol {ns.tol})")
    lo_sign = normalcone.df_closed(pf.pair, bracket.lo, ns.beta).inner_factor if bracket.lo > 0 else None
    hi_sign = normalcone.df_closed(pf.pair, bracket.hi, ns.beta).inner_factor if bracket.hi < 1 else None
    if lo_sign is not None:
        print(f"inner factor at lo: {lo_sign}")
    if hi_sign is not None:
        print(f"inner factor at hi: {hi_sign}")
    return EXIT_OK


def _cmd_oracle(ns) -> int:
    pf = resolve_pair(ns.pair)
    if pf.model is None:
        raise InputError(
            f"pair {pf.pair.name!r} has no dimension model; supply a 'hilbert' block"
        )
    if pf.divisor.m != 1:
        raise InputError("oracle needs a pair with divisor multiplicity m = 1")
    report = weightoracle.oracle_report(
        pf.pair, pf.model, ns.c, map_fn=lambda f, xs: _grid_map(f, xs)
    )
    sample_ks = weightoracle.admissible_ks(pf.model, ns.c, ns.kmax)
    report["samples"] = [
        weightoracle.dims_and_weights(pf.model, ns.c, k).as_dict() for k in sample_ks
    ]
    print(json.dumps(report, indent=2))
    return EXIT_OK if report["match"] else EXIT_INTERNAL


def _parse_criteria_file(path: str) -> SingularCriteriaInput:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read criteria file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"criteria file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("criteria file must hold a JSON object")
    allowed = {
        "Sbeta", "alpha_beta", "n", "is_lc", "is_klt", "is_logCY",
        "bullet1_eta", "eta_class_ample", "third_class_ample", "bullet2_nef",
        "corollary_neg", "corollary_nef",
        "klt_inv_semistable", "klt_inv_ample", "klt_inv_nef",
    }
    _reject_unknown(doc, allowed, "criteria file")
    for key in ("Sbeta", "alpha_beta", "n"):
        if key not in doc:
            raise InputError(f"criteria file is missing required key {key!r}")
    kwargs = {
        "Sbeta": parse_rational(str(doc["Sbeta"])),
        "alpha_beta": parse_rational(str(doc["alpha_beta"])),
        "n": int(doc["n"]),
    }
    if doc.get("bullet1_eta") is not None:
        kwargs["bullet1_eta"] = parse_rational(str(doc["bullet1_eta"]))
    for flag in ("is_lc", "is_klt", "is_logCY", "eta_class_ample", "third_class_ample",
                 "bullet2_nef", "corollary_neg", "corollary_nef",
                 "klt_inv_semistable", "klt_inv_ample", "klt_inv_nef"):
        if flag in doc:
            if not isinstance(doc[flag], bool):
                raise InputError(f"criteria key {flag!r} must be a boolean")
            kwargs[flag] = doc[flag]
    return SingularCriteriaInput(**kwargs)


def _cmd_criteria(ns) -> int:
    data = _parse_criteria_file(ns.file)
    verdicts = thresholds.singular_criteria(data)
    if not verdicts:
        print("no criterion applicable: no distinguishing assertion present")
        return EXIT_INCONCLUSIVE
    for i, verdict in enumerate(verdicts):
        if i:
            print()
        for line in _verdict_lines(verdict):
            print(line)
    satisfied = any(v.status is VerdictStatus.CRITERION_SATISFIED for v in verdicts)
    return EXIT_OK if satisfied else EXIT_INCONCLUSIVE


def _cmd_catalog(ns) -> int:
    if ns.action == "list":
        for name in pairmodel.catalog_names():
            print(name)
        return EXIT_OK
    if ns.name is None:
        raise InputError("catalog show needs a pair name")
    entry = pairmodel.catalog_entry(ns.name)
    pair = entry.pair
    print(f"name: {pair.name}")
    print(f"dimension: {pair.dimension}")
    print(f"L_top: {pair.L_top}")
    print(f"cX_L: {pair.cX_L}")
    print(f"proportional_x: {pair.proportional_x if pair.proportional_x is not None else 'none'}")
    print(f"divisor multiplicity: {entry.divisor.m}")
    print(f"dimension model: {entry.hilbert_kind or 'none (supply alphas and bounds by hand)'}")
    return EXIT_OK


# ----------------------------- parser wiring -----------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_pair_arg(sub) -> None:
    sub.add_argument("pair", help="pair source: 'catalog:NAME' or a JSON file path")


def _add_positivity_args(sub) -> None:
    sub.add_argument("--alpha-L", dest="alpha_L", type=_rational_arg, default=None,
                     help="alpha invariant of L (overrides the pair file)")
    sub.add_argument("--alpha-LD", dest="alpha_LD", type=_rational_arg, default=None,
                     help="alpha invariant of L_D restricted to D")
    sub.add_argument("--alpha-beta", dest="alpha_beta", type=_rational_arg, default=None,
                     help="direct alpha_beta override")
    sub.add_argument("--lambda", dest="lam", type=_rational_arg, default=None,
                     help="nef threshold lambda")
    sub.add_argument("--Lambda", dest="Lambda_up", type=_rational_arg, default=None,
                     help="nef threshold Lambda")
    sub.add_argument("--entropy-lower", dest="entropy_lower", type=_rational_arg,
                     default=None, help="user lower bound for the entropy threshold")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="logklab",
        description="Exact-arithmetic log K-stability calculator for polarised pairs.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("info", help="pair findings, scalar averages, instability threshold")
    _add_pair_arg(p)
    p.set_defaults(handler=_cmd_info)

    p = sub.add_parser("scalar", help="scalar averages at a cone angle")
    _add_pair_arg(p)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--m", type=int, default=None, help="override divisor multiplicity")
    p.set_defaults(handler=_cmd_scalar)

    p = sub.add_parser("thresholds", help="beta_u, alpha_beta lower bounds, minimal multiplicity")
    _add_pair_arg(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--beta", type=_rational_arg, default=Fraction(1, 2),
                   help="angle for the minimal-multiplicity row (default 1/2)")
    _add_positivity_args(p)
    p.set_defaults(handler=_cmd_thresholds)

    p = sub.add_parser("window", help="certified cone-angle window")
    _add_pair_arg(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--case", choices=["large", "given", "uniform"], required=True)
    _add_positivity_args(p)
    p.set_defaults(handler=_cmd_window)

    p = sub.add_parser("eta", help="eta-feasibility verdict with certificate")
    _add_pair_arg(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--beta", type=_rational_arg, required=True)
    _add_positivity_args(p)
    p.set_defaults(handler=_cmd_eta)

    p = sub.add_parser("entropy", help="entropy-threshold comparison verdict")
    _add_pair_arg(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--beta", type=_rational_arg, required=True)
    _add_positivity_args(p)
    p.set_defaults(handler=_cmd_entropy)

    p = sub.add_parser("df", help="log Donaldson-Futaki invariant via both paths")
    _add_pair_arg(p)
    p.add_argument("--c", type=_rational_arg, required=True)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.set_defaults(handler=_cmd_df)

    p = sub.add_parser("df-curve", help="DF grid over c for fixed beta")
    _add_pair_arg(p)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(handler=_cmd_df_curve)

    p = sub.add_parser("destabilize", help="find c with DF < 0 below the threshold")
    _add_pair_arg(p)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--tol", type=_rational_arg, default=Fraction(1, 2**60),
                   help="dyadic search floor (default 2^-60)")
    p.set_defaults(handler=_cmd_destabilize)

    p = sub.add_parser("critical-c", help="isolate the root of the inner factor")
    _add_pair_arg(p)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--tol", type=_rational_arg, required=True)
    p.set_defaults(handler=_cmd_critical_c)

    p = sub.add_parser("oracle", help="brute-force coefficient cross-check report")
    _add_pair_arg(p)
    p.add_argument("--c", type=_rational_arg, required=True)
    p.add_argument("--kmax", type=int, default=60,
                   help="sample listing bound for the report (default 60)")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("criteria", help="singular-pair criteria from asserted facts")
    p.add_argument("--file", required=True, help="JSON document mirroring the criteria input")
    p.set_defaults(handler=_cmd_criteria)

    p = sub.add_parser("catalog", help="builtin pairs")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(handler=_cmd_catalog)

    return parser


def run(argv: list[str]) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        exc.parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    try:
        return ns.handler(ns)
    except PreconditionFailedError as exc:
        print(f"PreconditionFailed: {exc.violated}")
        return EXIT_INCONCLUSIVE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalCheckError as exc:
        print(f"internal cross-check failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except LogKLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
