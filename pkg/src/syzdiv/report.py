"""Full verification sweep and deterministic report emission.

run_verify executes every check the library provides over a d-range and
returns a single report object; emit renders it to json, csv, latex or
plain text.  Report bytes are a pure function of the configuration: no
timestamps, no floats, no unordered containers.  Each deviation the library
can surface appears in exactly one section, tagged expected or not; the
overall verdict is "all-expected" only when every section matches its
documented expectation for the active conventions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from syzdiv.chern import (
    StructureCheckEntry,
    StructureCheckResult,
    WedgeOracleConfig,
    WedgeOracleReport,
    structure_sequence_check,
    wedge_oracle,
)
from syzdiv.divisors import (
    IdentityCheckReport,
    RelationRecord,
    binomial_identity_check,
    mu_class,
    relations_audit,
)
from syzdiv.exact import GPoly, binomial
from syzdiv.intersection import (
    DEFAULT_LEDGER,
    ConventionLedger,
    Degree2,
    DivisorClass,
    chern_diff,
    push_degree2,
)
from syzdiv.koszul import assemble_ch_N, ch_N_closed, deg_N, rank_N

TOOL_VERSION = "0.1.0"

_EXPECTED_RELATION_STATUS = {
    "R1": "recorded-only",
    "R2": "derived-match",
    "R3": "derived-match",
    "R4": "derived-match",
    "R5": "recorded-only",
    "R6": "recorded-only",
    "R7": "derived-mismatch",
    "R8": "recorded-only",
}
_EXPECTED_RELATION_CHECKS = {
    "R5": (("sum(5+6)", "derived-match"),),
    "R6": (("sum(5+6)", "derived-match"),),
    "R7": (
        ("2d:kappa", "match"),
        ("2d:zeta", "match"),
        ("2d:delta", "mismatch"),
        ("2(d-1):kappa", "mismatch"),
        ("2(d-1):zeta", "mismatch"),
        ("2(d-1):delta", "mismatch"),
    ),
}


@dataclass(frozen=True)
class VerifyConfig:
    d_min: int = 4
    d_max: int = 14
    seed: int = 42
    ledger: ConventionLedger = DEFAULT_LEDGER
    oracle_rank_min: int = 3
    oracle_rank_max: int = 12
    oracle_trials: int = 30
    identities_max: int = 40


@dataclass(frozen=True)
class CaseSummary:
    d: int
    i: int
    rank: Fraction
    deg: GPoly
    a_coeff: Fraction
    applied_sign: int
    bogomolov: DivisorClass
    printed_target: DivisorClass
    mu_diff: DivisorClass
    euler_closed_diff: tuple[tuple[str, GPoly], ...]
    rank_ok: bool
    deg_ok: bool
    sigma_ok: bool
    symmetry_ok: bool
    expected: bool
    flags: tuple[str, ...]


@dataclass(frozen=True)
class OracleSection:
    rank_min: int
    rank_max: int
    trials: int
    seed: int
    reports: tuple[WedgeOracleReport, ...]

    @property
    def all_match(self) -> bool:
        return all(r.all_match for r in self.reports)


@dataclass(frozen=True)
class VerificationReport:
    tool_version: str
    ledger: ConventionLedger
    d_min: int
    d_max: int
    seed: int
    per_case: tuple[CaseSummary, ...]
    relation_records: tuple[RelationRecord, ...]
    relations_stable: bool
    identity_report: IdentityCheckReport
    oracle: OracleSection
    structure_checks: tuple[StructureCheckResult, ...]
    overall: str


def _case_expectation(d, i, ledger, ec_diff, rank, mu, sym_diff):
    """Expected-status rule for one sweep case under the active conventions."""
    flags = []
    if ledger.ell_coeff == "derived":
        return not ec_diff and mu.diff.is_zero() and sym_diff.is_zero(), ()
    # documented deviations of the published w-coefficient: it shifts the
    # assembly by C(d-3, i) * w, which propagates to the class as
    # -2 rank C(d-3, i) (kappa + 4 zeta) and skews the i <-> d-2-i symmetry
    # by the difference of the two shifts
    wdef = binomial(d - 3, i)
    ec_ok = set(ec_diff) == {"ch2.w"} and ec_diff["ch2.w"] == GPoly((wdef,))
    want_mu = push_degree2(Degree2(w=GPoly((wdef,))), d, ledger) * (-2 * rank)
    skew = wdef - binomial(d - 3, d - 2 - i)
    want_sym = push_degree2(Degree2(w=GPoly((skew,))), d, ledger) * (-2 * rank)
    ok = ec_ok and mu.diff == want_mu and sym_diff == want_sym
    if ok:
        flags.append("euler-closed-w-defect")
        if skew != 0:
            flags.append("symmetry-w-skew")
    return ok, tuple(flags)


def run_verify(config: VerifyConfig = VerifyConfig()) -> VerificationReport:
    """Run the full suite; never raises on deviations, encodes them instead."""
    if not 4 <= config.d_min <= config.d_max <= 20:
        raise ValueError(
            f"sweep range must satisfy 4 <= d_min <= d_max <= 20, got [{config.d_min}, {config.d_max}]"
        )
    if config.oracle_rank_min > config.oracle_rank_max:
        raise ValueError("oracle rank range is empty")
    ledger = config.ledger

    # sweep the Koszul assembly against every closed form
    raw = {}
    for d in range(config.d_min, config.d_max + 1):
        for i in range(1, d - 2):
            euler, sign = assemble_ch_N(d, i, ledger)
            mu = mu_class(d, i, ledger)
            raw[(d, i)] = (euler, sign, mu)

    cases = []
    all_expected = True
    for (d, i), (euler, sign, mu) in sorted(raw.items()):
        rank = rank_N(d, i)
        deg = deg_N(d, i)
        ec_diff = chern_diff(euler, ch_N_closed(d, i))
        rank_ok = euler.rank == rank
        sigma_ok = (
            euler.c1.sigma.is_zero() and euler.ch2.m.is_zero() and euler.ch2.g2.is_zero()
        )
        deg_ok = deg == euler.c1.c1E * GPoly((d - 1, 1))
        partner = raw[(d, d - 2 - i)][2]
        sym_diff = mu.bogomolov - partner.bogomolov
        symmetry_ok = sym_diff.is_zero()
        case_ok, flags = _case_expectation(d, i, ledger, ec_diff, rank, mu, sym_diff)
        expected = rank_ok and sigma_ok and deg_ok and case_ok
        all_expected = all_expected and expected
        cases.append(
            CaseSummary(
                d=d,
                i=i,
                rank=rank,
                deg=deg,
                a_coeff=mu.a_coeff,
                applied_sign=sign,
                bogomolov=mu.bogomolov,
                printed_target=mu.printed_target,
                mu_diff=mu.diff,
                euler_closed_diff=tuple(ec_diff.items()),
                rank_ok=rank_ok,
                deg_ok=deg_ok,
                sigma_ok=sigma_ok,
                symmetry_ok=symmetry_ok,
                expected=expected,
                flags=flags,
            )
        )

    # relations audit for every d; statuses and sub-checks must not move
    audits = {d: relations_audit(d, ledger) for d in range(config.d_min, config.d_max + 1)}
    shapes = {
        d: tuple((r.id, r.status, r.checks) for r in recs) for d, recs in audits.items()
    }
    relations_stable = len(set(shapes.values())) == 1
    records = audits[config.d_min]
    relations_ok = relations_stable and all(
        r.status == _EXPECTED_RELATION_STATUS[r.id]
        and r.checks == _EXPECTED_RELATION_CHECKS.get(r.id, ())
        for r in records
    )
    all_expected = all_expected and relations_ok

    identity_report = binomial_identity_check(config.identities_max)
    all_expected = all_expected and identity_report.all_match

    oracle_reports = tuple(
        wedge_oracle(WedgeOracleConfig(rank=r, trials=config.oracle_trials, seed=config.seed + r))
        for r in range(config.oracle_rank_min, config.oracle_rank_max + 1)
    )
    oracle = OracleSection(
        config.oracle_rank_min,
        config.oracle_rank_max,
        config.oracle_trials,
        config.seed,
        oracle_reports,
    )
    all_expected = all_expected and oracle.all_match

    # structure sequences under both conventions, whatever the active one
    structure = []
    for d in range(config.d_min, config.d_max + 1):
        for variant in ("derived", "paper"):
            res = structure_sequence_check(d, replace(ledger, ell_coeff=variant))
            structure.append(res)
            if variant == "derived":
                all_expected = all_expected and res.all_ok()
            else:
                by_power = {e.power: e for e in res.entries}
                l1 = by_power[1]
                paper_ok = (
                    by_power[0].ok
                    and not l1.ok
                    and l1.defect == (("ch2.w", GPoly((1,))),)
                )
                all_expected = all_expected and paper_ok

    return VerificationReport(
        tool_version=TOOL_VERSION,
        ledger=ledger,
        d_min=config.d_min,
        d_max=config.d_max,
        seed=config.seed,
        per_case=tuple(cases),
        relation_records=records,
        relations_stable=relations_stable,
        identity_report=identity_report,
        oracle=oracle,
        structure_checks=tuple(structure),
        overall="all-expected" if all_expected else "unexpected-deviation",
    )


def exit_code_for(report: VerificationReport) -> int:
    return 0 if report.overall == "all-expected" else 1


# --- serialization -----------------------------------------------------------


def _poly_j(p: GPoly) -> list[str]:
    return [str(c) for c in p.coeffs]


def _poly_from(arr) -> GPoly:
    return GPoly(Fraction(s) for s in arr)


def _dc_j(dc: DivisorClass) -> dict:
    return {"kappa": _poly_j(dc.kappa), "zeta": _poly_j(dc.zeta), "delta": _poly_j(dc.delta)}


def _dc_from(obj) -> DivisorClass:
    return DivisorClass(
        kappa=_poly_from(obj["kappa"]), zeta=_poly_from(obj["zeta"]), delta=_poly_from(obj["delta"])
    )


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "tool_version": report.tool_version,
        "ledger": {
            "ell_coeff": report.ledger.ell_coeff,
            "global_sign": report.ledger.global_sign,
            "relation_source": report.ledger.relation_source,
        },
        "sweep_range": {"d_min": report.d_min, "d_max": report.d_max},
        "seed": report.seed,
        "per_case": [
            {
                "d": c.d,
                "i": c.i,
                "rank": str(c.rank),
                "deg": _poly_j(c.deg),
                "a_coeff": str(c.a_coeff),
                "applied_sign": c.applied_sign,
                "bogomolov": _dc_j(c.bogomolov),
                "printed_target": _dc_j(c.printed_target),
                "mu_diff": _dc_j(c.mu_diff),
                "euler_closed_diff": [[k, _poly_j(v)] for k, v in c.euler_closed_diff],
                "rank_ok": c.rank_ok,
                "deg_ok": c.deg_ok,
                "sigma_ok": c.sigma_ok,
                "symmetry_ok": c.symmetry_ok,
                "expected": c.expected,
                "flags": list(c.flags),
            }
            for c in report.per_case
        ],
        "relations": {
            "stable_across_sweep": report.relations_stable,
            "records": [
                {
                    "id": r.id,
                    "printed": r.printed,
                    "status": r.status,
                    "notes": r.notes,
                    "checks": [[k, v] for k, v in r.checks],
                }
                for r in report.relation_records
            ],
        },
        "identity_report": {
            "a_max": report.identity_report.a_max,
            "checks": report.identity_report.checks,
            "mismatches": [
                [which, a, p, str(lhs), str(rhs)]
                for which, a, p, lhs, rhs in report.identity_report.mismatches
            ],
        },
        "oracle_report": {
            "rank_min": report.oracle.rank_min,
            "rank_max": report.oracle.rank_max,
            "trials": report.oracle.trials,
            "seed": report.oracle.seed,
            "all_match": report.oracle.all_match,
            "per_rank": [
                {
                    "rank": r.rank,
                    "trials": r.trials,
                    "seed": r.seed,
                    "checks": r.checks,
                    "per_l": [list(t) for t in r.per_l],
                    "mismatches": [list(t) for t in r.mismatches],
                }
                for r in report.oracle.reports
            ],
        },
        "structure_checks": [
            {
                "d": s.d,
                "variant": s.variant,
                "entries": [
                    {
                        "power": e.power,
                        "ok": e.ok,
                        "defect": [[k, _poly_j(v)] for k, v in e.defect],
                    }
                    for e in s.entries
                ],
            }
            for s in report.structure_checks
        ],
        "overall": report.overall,
    }


def report_from_dict(data: dict) -> VerificationReport:
    cases = tuple(
        CaseSummary(
            d=c["d"],
            i=c["i"],
            rank=Fraction(c["rank"]),
            deg=_poly_from(c["deg"]),
            a_coeff=Fraction(c["a_coeff"]),
            applied_sign=c["applied_sign"],
            bogomolov=_dc_from(c["bogomolov"]),
            printed_target=_dc_from(c["printed_target"]),
            mu_diff=_dc_from(c["mu_diff"]),
            euler_closed_diff=tuple((k, _poly_from(v)) for k, v in c["euler_closed_diff"]),
            rank_ok=c["rank_ok"],
            deg_ok=c["deg_ok"],
            sigma_ok=c["sigma_ok"],
            symmetry_ok=c["symmetry_ok"],
            expected=c["expected"],
            flags=tuple(c["flags"]),
        )
        for c in data["per_case"]
    )
    rel = data["relations"]
    records = tuple(
        RelationRecord(
            id=r["id"],
            printed=r["printed"],
            status=r["status"],
            notes=r["notes"],
            checks=tuple((k, v) for k, v in r["checks"]),
        )
        for r in rel["records"]
    )
    idr = data["identity_report"]
    identity = IdentityCheckReport(
        a_max=idr["a_max"],
        checks=idr["checks"],
        mismatches=tuple(
            (which, a, p, Fraction(lhs), Fraction(rhs))
            for which, a, p, lhs, rhs in idr["mismatches"]
        ),
    )
    orc = data["oracle_report"]
    oracle = OracleSection(
        rank_min=orc["rank_min"],
        rank_max=orc["rank_max"],
        trials=orc["trials"],
        seed=orc["seed"],
        reports=tuple(
            WedgeOracleReport(
                rank=r["rank"],
                trials=r["trials"],
                seed=r["seed"],
                checks=r["checks"],
                per_l=tuple(tuple(t) for t in r["per_l"]),
                mismatches=tuple(tuple(t) for t in r["mismatches"]),
            )
            for r in orc["per_rank"]
        ),
    )
    structure = tuple(
        StructureCheckResult(
            d=s["d"],
            variant=s["variant"],
            entries=tuple(
                StructureCheckEntry(
                    power=e["power"],
                    ok=e["ok"],
                    defect=tuple((k, _poly_from(v)) for k, v in e["defect"]),
                )
                for e in s["entries"]
            ),
        )
        for s in data["structure_checks"]
    )
    return VerificationReport(
        tool_version=data["tool_version"],
        ledger=ConventionLedger(
            ell_coeff=data["ledger"]["ell_coeff"],
            global_sign=data["ledger"]["global_sign"],
            relation_source=data["ledger"]["relation_source"],
        ),
        d_min=data["sweep_range"]["d_min"],
        d_max=data["sweep_range"]["d_max"],
        seed=data["seed"],
        per_case=cases,
        relation_records=records,
        relations_stable=rel["stable_across_sweep"],
        identity_report=identity,
        oracle=oracle,
        structure_checks=structure,
        overall=data["overall"],
    )


# --- emission ----------------------------------------------------------------


def _emit_json(report: VerificationReport) -> bytes:
    return (json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n").encode("utf-8")


def _emit_csv(report: VerificationReport) -> bytes:
    lines = ["d,i,rank,deg,A_i,diff_is_zero"]
    for c in report.per_case:
        zero = "true" if c.mu_diff.is_zero() else "false"
        lines.append(f"{c.d},{c.i},{c.rank},{c.deg},{c.a_coeff},{zero}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _latex_poly(p: GPoly) -> str:
    return str(p).replace("*", "")


def _latex_class(dc: DivisorClass) -> str:
    parts = []
    for name, sym in (("kappa", r"\kappa"), ("zeta", r"\zeta"), ("delta", r"\delta")):
        c = getattr(dc, name)
        if not c.is_zero():
            parts.append(f"({_latex_poly(c)}) {sym}")
    return " + ".join(parts) if parts else "0"


def _emit_latex(report: VerificationReport) -> bytes:
    lines = [
        r"\begin{tabular}{rrll}",
        r"$d$ & $i$ & $A_i$ & class \\",
        r"\hline",
    ]
    for c in report.per_case:
        lines.append(f"{c.d} & {c.i} & ${c.a_coeff}$ & ${_latex_class(c.bogomolov)}$ \\\\")
    lines.append(r"\end{tabular}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _emit_text(report: VerificationReport) -> bytes:
    r = report
    lines = [
        f"verification report (tool {r.tool_version})",
        f"conventions: ell_coeff={r.ledger.ell_coeff} global_sign={r.ledger.global_sign} "
        f"relation_source={r.ledger.relation_source}",
        f"sweep: d in [{r.d_min}, {r.d_max}], {len(r.per_case)} cases, seed {r.seed}",
        "",
    ]
    for c in r.per_case:
        status = "ok" if c.expected else "UNEXPECTED"
        note = f" [{','.join(c.flags)}]" if c.flags else ""
        lines.append(
            f"  (d={c.d}, i={c.i}): rank {c.rank}, deg {c.deg}, A_i {c.a_coeff}, "
            f"class {c.bogomolov}, diff {c.mu_diff} -> {status}{note}"
        )
    lines.append("")
    lines.append(f"relations (at d={r.d_min}; stable across sweep: {str(r.relations_stable).lower()}):")
    for rec in r.relation_records:
        lines.append(f"  {rec.id} {rec.status}: {rec.printed}")
        if rec.checks:
            lines.append("      " + "; ".join(f"{k}={v}" for k, v in rec.checks))
    lines.append("")
    lines.append(
        f"identities: a_max {r.identity_report.a_max}, {r.identity_report.checks} checks, "
        f"{len(r.identity_report.mismatches)} mismatches"
    )
    lines.append(
        f"oracle: ranks [{r.oracle.rank_min}, {r.oracle.rank_max}], {r.oracle.trials} trials each, "
        f"{'all match' if r.oracle.all_match else 'MISMATCHES'}"
    )
    bad_struct = [
        s for s in r.structure_checks
        if (s.variant == "derived") != s.all_ok()
    ]
    lines.append(
        "structure sequences: derived variant passes, published variant fails l=1 by w"
        if not bad_struct
        else f"structure sequences: UNEXPECTED at {[(s.d, s.variant) for s in bad_struct]}"
    )
    lines.append("")
    lines.append(f"overall: {r.overall}")
    return ("\n".join(lines) + "\n").encode("utf-8")


_EMITTERS = {
    "json": _emit_json,
    "csv": _emit_csv,
    "latex": _emit_latex,
    "text": _emit_text,
}

FORMATS = tuple(_EMITTERS)


def emit(report: VerificationReport, fmt: str) -> bytes:
    """Render a report to bytes; identical input yields identical bytes."""
    try:
        emitter = _EMITTERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}") from None
    return emitter(report)
