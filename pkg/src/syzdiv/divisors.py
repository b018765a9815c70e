"""Divisor classes of the syzygy loci, and the audits behind them.

The locus where N_i fails to be balanced carries the divisor class obtained
by pushing the Bogomolov expression c1^2 - 2 rk ch2 of N_i down to the base.
This module computes that class, compares it coefficient by coefficient
against the published target A_i (6(gd-6g+d+6) zeta - d(d-12) kappa - d^2
delta), and audits every pushforward relation the computation rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from syzdiv.exact import GPoly, binomial
from syzdiv.intersection import (
    C1E,
    DEFAULT_LEDGER,
    OMEGA_ALPHA,
    OMEGA_PI,
    PULL_SIGMA,
    SIGMA,
    ConventionLedger,
    Degree2,
    DivisorClass,
    PDegree1,
    TruncatedChern,
    branch_degree,
    branch_half,
    derived_ch2_push,
    pair_on_C,
    pair_on_P,
    prod1,
    push_degree2,
)
from syzdiv.koszul import _check_case, ch_N_euler

_HALF = Fraction(1, 2)
_SIXTH = Fraction(1, 6)


def bogomolov_class(
    v: TruncatedChern, d: int, ledger: ConventionLedger = DEFAULT_LEDGER
) -> DivisorClass:
    """Pushforward to the base of the Bogomolov expression c1^2 - 2 rk ch2.

    The expression is invariant under twisting v by any line bundle and
    under dualizing, so it only sees the projective bundle of v.  Requires
    a positive constant rank.
    """
    if v.rank.degree > 0:
        raise ValueError(f"rank must be constant, got {v.rank}")
    r = v.rank.constant()
    if r <= 0:
        raise ValueError(f"rank must be positive, got {r}")
    return push_degree2(prod1(v.c1, v.c1) - v.ch2 * (2 * r), d, ledger)


def A_coeff(d: int, i: int) -> Fraction:
    """Overall rational scale of the i-th syzygy divisor class:

        C(d-4, i-1)^2 (d-2)(d-3) / (6 (i+1)(d-i-1)),

    symmetric under i <-> d-2-i and positive on the valid range.
    """
    _check_case(d, i)
    c = binomial(d - 4, i - 1)
    return c * c * Fraction((d - 2) * (d - 3), 6 * (i + 1) * (d - i - 1))


def mu_class_printed(d: int, i: int) -> DivisorClass:
    """Published target class A_i (6(gd-6g+d+6) zeta - d(d-12) kappa - d^2 delta)."""
    _check_case(d, i)
    return A_coeff(d, i) * DivisorClass(
        kappa=GPoly((-d * (d - 12),)),
        zeta=GPoly((6 * (d + 6), 6 * (d - 6))),
        delta=GPoly((-d * d,)),
    )


@dataclass(frozen=True)
class MuClassResult:
    d: int
    i: int
    bogomolov: DivisorClass
    printed_target: DivisorClass
    a_coeff: Fraction
    diff: DivisorClass


def mu_class(d: int, i: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> MuClassResult:
    """Syzygy divisor class from the Euler assembly, with the printed target.

    diff = bogomolov - printed_target; exactly zero under the derived
    conventions, for every (d, i) in range.
    """
    bog = bogomolov_class(ch_N_euler(d, i, ledger), d, ledger)
    printed = mu_class_printed(d, i)
    return MuClassResult(d, i, bog, printed, A_coeff(d, i), bog - printed)


# --- relations audit -------------------------------------------------------

# the published right-hand sides of relations (5), (6) and (8); individually
# these are definitions of the base classes T, D, K and cannot be rederived
# from the pairing tables, but the combination (5)+(6) can be
_PRINTED_T = DivisorClass(kappa=GPoly((2,)), zeta=GPoly((6,)), delta=GPoly((-1,)))


def _printed_D(d: int) -> DivisorClass:
    # -3 kappa + (b-10) zeta + delta
    return DivisorClass(kappa=GPoly((-3,)), zeta=GPoly((2 * d - 12, 2)), delta=GPoly((1,)))


@dataclass(frozen=True)
class RelationRecord:
    id: str
    printed: str
    status: str  # derived-match | derived-mismatch | recorded-only
    notes: str
    checks: tuple[tuple[str, str], ...] = ()


def sum_check_5_6(d: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> tuple[DivisorClass, DivisorClass]:
    """Derivable combination of relations (5) and (6).

    The squares of the two natural degree-1 classes satisfy
    (beta^2 - 2 rho^2)/2 = T + D on the base, where beta = 2 c1(E) is the
    branch class and rho the relative dualizing class.  Left side pushes
    (4s - 2w)/2 = 2s - w; right side is the printed T + D = -kappa + (b-4)
    zeta.  Returns (derived, printed).
    """
    derived = push_degree2(Degree2(s=GPoly((2,)), w=GPoly((-1,))), d, ledger)
    printed = _PRINTED_T + _printed_D(d)
    return derived, printed


def relation_r7_readings(d: int, ledger: ConventionLedger = DEFAULT_LEDGER):
    """Both documented readings of relation (7) against the printed value.

    Printed: push of (c1(E)^2 - 2d ch2(E)) equals
    -(d/6) kappa + ((b-2d)/2) zeta + (d/6) delta.  The literal "2d" reading
    reproduces kappa and zeta but the opposite sign on delta; reading the
    middle coefficient as twice the rank, 2(d-1), changes all three.
    Returns (printed, computed_2d, computed_rank).
    """
    printed = DivisorClass(
        kappa=GPoly((-Fraction(d, 6),)),
        zeta=GPoly((-1, 1)),  # (b - 2d)/2 = g - 1
        delta=GPoly((Fraction(d, 6),)),
    )
    computed_2d = push_degree2(Degree2(s=GPoly((1,)), q=GPoly((-2 * d,))), d, ledger)
    computed_rank = push_degree2(Degree2(s=GPoly((1,)), q=GPoly((-2 * (d - 1),))), d, ledger)
    return printed, computed_2d, computed_rank


def _component_checks(tag: str, got: DivisorClass, want: DivisorClass):
    out = []
    for name in ("kappa", "zeta", "delta"):
        ok = getattr(got, name) == getattr(want, name)
        out.append((f"{tag}:{name}", "match" if ok else "mismatch"))
    return out


def relations_audit(d: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> tuple[RelationRecord, ...]:
    """One record per pushforward relation (1)-(8), at cover degree d.

    Derivable relations are recomputed from independent inputs and compared
    against their published right-hand sides; definitions are recorded as
    such.  Every discrepancy is itemized, never silently absorbed.
    """
    if d < 4:
        raise ValueError(f"cover degree must be at least 4, got {d}")
    records = []

    records.append(
        RelationRecord(
            "R1",
            "12*lambda = kappa + delta",
            "recorded-only",
            "eliminated on storage: lambda is always written as (kappa + delta)/12",
        )
    )

    # (2): p_* c1(E)^2 = (b/2) zeta.  Rederived from the branch class
    # alpha_* c1(omega_alpha) = 2 c1(E) paired with sigma (projection
    # formula moves the product to the curve) plus c1(E)^2 = b c1(E) sigma.
    derived_m = pair_on_C(OMEGA_ALPHA, PULL_SIGMA) * _HALF
    derived_s = branch_degree(d) * derived_m
    printed_s = DivisorClass(zeta=branch_half(d))
    ok = derived_s == printed_s
    records.append(
        RelationRecord(
            "R2",
            f"p_*c1(E)^2 = ({branch_half(d)})*zeta",
            "derived-match" if ok else "derived-mismatch",
            "rederived through the curve: pairing the relative dualizing class "
            "with the pulled-back sigma gives p_*(c1(E).sigma) = zeta/2, and "
            "c1(E)^2 = b c1(E).sigma scales it by the branch degree"
            + ("" if ok else f"; diff {derived_s - printed_s}"),
        )
    )

    # (3): p_* ch2(E) = kappa/12 + zeta/2 + delta/12, rederived by GRR
    # through the Hodge class, independently of the stored q row.
    derived_q = derived_ch2_push(d)
    printed_q = push_degree2(Degree2(q=GPoly((1,))), d)
    ok = derived_q == printed_q
    records.append(
        RelationRecord(
            "R3",
            "p_*ch2(E) = (1/12)*kappa + (1/2)*zeta + (1/12)*delta",
            "derived-match" if ok else "derived-mismatch",
            "rederived via the Hodge class of the full direct image O + dual(E) "
            "and the relative Todd class of the ruled surface"
            + ("" if ok else f"; diff {derived_q - printed_q}"),
        )
    )

    # (4): pi_* c1(omega_alpha)^2 = kappa + 4 zeta.
    derived_w = pair_on_C(OMEGA_ALPHA, OMEGA_ALPHA)
    printed_w = DivisorClass(kappa=GPoly((1,)), zeta=GPoly((4,)))
    ok = derived_w == printed_w
    records.append(
        RelationRecord(
            "R4",
            "pi_*c1(omega_alpha)^2 = kappa + 4*zeta",
            "derived-match" if ok else "derived-mismatch",
            "expanded as (omega_pi + 2 alpha^*sigma)^2 under the curve pairing"
            + ("" if ok else f"; diff {derived_w - printed_w}"),
        )
    )

    # (5) and (6) individually define T and D; their sum is derivable.
    der, pr = sum_check_5_6(d, ledger)
    sum_status = "derived-match" if der == pr else "derived-mismatch"
    sum_note = (
        f"individual value is a definition; the combination (beta^2 - 2 rho^2)/2 "
        f"= T + D is derivable and checks {sum_status}: push(2s - w) = {der}"
    )
    sum_checks = (("sum(5+6)", sum_status),)
    records.append(
        RelationRecord("R5", "T = 2*kappa + 6*zeta - delta", "recorded-only", sum_note, sum_checks)
    )
    records.append(
        RelationRecord(
            "R6",
            f"D = -3*kappa + ({GPoly((2 * d - 12, 2))})*zeta + delta",
            "recorded-only",
            sum_note,
            sum_checks,
        )
    )

    # (7): audited under both documented readings, never adjudicated.
    printed7, via_2d, via_rank = relation_r7_readings(d, ledger)
    checks7 = tuple(
        _component_checks("2d", via_2d, printed7) + _component_checks("2(d-1)", via_rank, printed7)
    )
    mismatch = any(v == "mismatch" for _, v in checks7)
    records.append(
        RelationRecord(
            "R7",
            f"push(c1(E)^2 - 2d*ch2(E)) = (-{Fraction(d,6)})*kappa + (g-1)*zeta + ({Fraction(d,6)})*delta",
            "derived-mismatch" if mismatch else "derived-match",
            f"2d reading gives {via_2d} (delta coefficient {via_2d.delta} against "
            f"printed {printed7.delta}); rank reading 2(d-1) gives {via_rank}",
            checks7,
        )
    )

    records.append(
        RelationRecord(
            "R8",
            "K = kappa + zeta - delta",
            "recorded-only",
            "canonical class of the base in the storage basis; a definition here",
        )
    )
    return tuple(records)


# --- combinatorial identity check ------------------------------------------


def identity_sum(which: int, a: int, p: int) -> Fraction:
    """Literal alternating sum number `which` in (0, 1, 2):

        sum_{l=0}^{p} (-1)^l C(a, p-l) * weight(l)

    with weight 1, l, or l(l-1)."""
    total = Fraction(0)
    for l in range(p + 1):
        weight = (1, l, l * (l - 1))[which]
        term = binomial(a, p - l) * weight
        total += -term if l % 2 else term
    return total


def identity_closed(which: int, a: int, p: int) -> Fraction:
    """Closed forms: C(a-1, p), -C(a-2, p-1), 2 C(a-3, p-2)."""
    if which == 0:
        return binomial(a - 1, p)
    if which == 1:
        return -binomial(a - 2, p - 1)
    return 2 * binomial(a - 3, p - 2)


@dataclass(frozen=True)
class IdentityCheckReport:
    a_max: int
    checks: int
    mismatches: tuple[tuple[int, int, int, Fraction, Fraction], ...]

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def binomial_identity_check(a_max: int) -> IdentityCheckReport:
    """Brute-force the three alternating binomial identities on a grid.

    Sweeps the full square 0 <= a, p <= a_max (the closed forms hold with
    the generalized binomial even for p > a), comparing literal summation
    against the closed form for each of the three weights.
    """
    if a_max < 0:
        raise ValueError(f"a_max must be nonnegative, got {a_max}")
    mismatches = []
    checks = 0
    for a in range(a_max + 1):
        for p in range(a_max + 1):
            for which in range(3):
                checks += 1
                lhs = identity_sum(which, a, p)
                rhs = identity_closed(which, a, p)
                if lhs != rhs:
                    mismatches.append((which, a, p, lhs, rhs))
    return IdentityCheckReport(a_max, checks, tuple(mismatches))


# --- interpretation search ---------------------------------------------------


@dataclass(frozen=True)
class CandidateResult:
    label: str
    value: DivisorClass
    matches: bool


@dataclass(frozen=True)
class InterpretationReport:
    d: int
    left: DivisorClass
    target: DivisorClass
    entries: tuple[CandidateResult, ...]

    @property
    def matched_labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.entries if e.matches)


_MULTIPLIERS = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
)


def _default_candidates(d: int):
    c_atoms = (("rho", OMEGA_ALPHA), ("omega_pi", OMEGA_PI), ("alpha_sigma", PULL_SIGMA))
    beta = PDegree1(c1E=GPoly((2,)))
    p_atoms = (("beta", beta), ("sigma", SIGMA))
    bases = []
    for k, (na, xa) in enumerate(c_atoms):
        for nb, xb in c_atoms[k:]:
            bases.append((f"pi({na}*{nb})", pair_on_C(xa, xb)))
    for k, (na, xa) in enumerate(p_atoms):
        for nb, xb in p_atoms[k:]:
            bases.append((f"p({na}*{nb})", pair_on_P(xa, xb, d)))
    return bases


def interpretation_search(d: int = 4, candidates=None) -> InterpretationReport:
    """Search for the correction X in 2 pi_*(rho^2) + X = printed T + delta.

    The left side is 2(kappa + 4 zeta); the printed target is 2 kappa +
    6 zeta, so the defect is exactly -2 zeta.  The candidate list is the
    fixed set of pushforwards of degree-2 monomials in the natural degree-1
    classes on the curve (rho, omega_pi, alpha^*sigma) and on the ruled
    surface (the branch class beta and sigma), each scaled by one of
    (+-1, +-2, +-1/2); pass an explicit iterable (possibly empty) of
    (label, DivisorClass) pairs to override it.
    """
    if d < 3:
        raise ValueError(f"cover degree must be at least 3, got {d}")
    left = pair_on_C(OMEGA_ALPHA, OMEGA_ALPHA) * 2
    target = DivisorClass(kappa=GPoly((2,)), zeta=GPoly((6,)))
    bases = _default_candidates(d) if candidates is None else list(candidates)
    entries = []
    for label, value in bases:
        for mult in _MULTIPLIERS:
            scaled = value * mult
            full_label = label if mult == 1 else f"{mult}*{label}"
            entries.append(CandidateResult(full_label, scaled, left + scaled == target))
    return InterpretationReport(d, left, target, tuple(entries))
