"""Truncated Chern characters of the bundles attached to a degree-d cover.

Builds ch(E) and its exterior powers for the rank-(d-1) reduced direct-image
bundle E, the direct images of powers of the relative dualizing sheaf of the
cover, and the checks that pin down the conventions: a randomized splitting-
principle oracle for the exterior-power identities, and the two
structure-sequence identities that distinguish the derived w-coefficient
from the published one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from syzdiv.exact import GP_ONE, GPoly, binomial
from syzdiv.intersection import (
    C1E,
    DEFAULT_LEDGER,
    CH_ONE,
    ConventionLedger,
    Degree2,
    PDegree1,
    TruncatedChern,
    chern_diff,
    trunc_dual,
)

_HALF = Fraction(1, 2)


def ch_E(d: int) -> TruncatedChern:
    """Truncated character (d-1, c1(E), ch2(E)) of the reduced direct image."""
    if d < 3:
        raise ValueError(f"cover degree must be at least 3, got {d}")
    return TruncatedChern(rank=GPoly((d - 1,)), c1=C1E, ch2=Degree2(q=GP_ONE))


def ch_wedge_E(d: int, l: int) -> TruncatedChern:
    """Truncated character of the l-th exterior power of E.

    With rank E = d-1:
        rank = C(d-1, l)
        c1   = C(d-2, l-1) c1(E)
        ch2  = C(d-2, l-1) ch2(E) + (1/2) C(d-3, l-2) (c1(E)^2 - 2 ch2(E))
    These reduce the splitting-principle sums over l-subsets of Chern roots
    and are checked against literal subset enumeration by wedge_oracle.
    """
    if d < 3:
        raise ValueError(f"cover degree must be at least 3, got {d}")
    if not 0 <= l <= d - 1:
        raise ValueError(f"exterior power {l} outside [0, {d - 1}]")
    a = binomial(d - 2, l - 1)
    b = binomial(d - 3, l - 2) * _HALF
    return TruncatedChern(
        rank=GPoly((binomial(d - 1, l),)),
        c1=C1E * a,
        ch2=Degree2(q=GPoly((a - 2 * b,)), s=GPoly((b,))),
    )


def _mul_fiber(a, b):
    """Truncated product over the fiber basis (1, K, K^2, c2); deg K = 1."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 * b2 + a1 * b1 + a2 * b0,
        a0 * b3 + a3 * b0,
    )


def ch_pushforward_omega_power(
    d: int, l: int, ledger: ConventionLedger = DEFAULT_LEDGER
) -> TruncatedChern:
    """Truncated character of the direct image of omega_alpha^l under the cover.

    The derived variant actually expands GRR for the finite cover: with
    K = c1(omega_alpha),

        ch(omega^l) = 1 + l K + (l^2/2) K^2,
        relative Todd factor = 1 - K/2 + (K^2 + c2)/12,

    multiplies the two in the fiber basis (1, K, K^2, c2), and pushes each
    basis vector separately: 1 -> d, K -> 2 c1(E) (the branch class),
    K^2 -> w, c2 -> 12 ch2(E) - w.  The result has w-coefficient (l^2-l)/2.
    The "paper" variant instead returns the published closed form with
    w-coefficient (l^2+l)/2; the two differ by exactly l*w, which the
    structure-sequence checks expose.
    """
    if d < 3:
        raise ValueError(f"cover degree must be at least 3, got {d}")
    if l < 0:
        raise ValueError(f"power must be nonnegative, got {l}")
    lf = Fraction(l)
    if ledger.ell_coeff == "paper":
        wc = (lf * lf + lf) * _HALF
        return TruncatedChern(
            rank=GPoly((d,)),
            c1=C1E * (2 * l - 1),
            ch2=Degree2(q=GP_ONE, w=GPoly((wc,))),
        )
    ch_omega_l = (Fraction(1), lf, lf * lf * _HALF, Fraction(0))
    todd = (Fraction(1), -_HALF, Fraction(1, 12), Fraction(1, 12))
    c0, ck, ck2, cc2 = _mul_fiber(ch_omega_l, todd)
    return TruncatedChern(
        rank=GPoly((d,)) * c0,
        c1=C1E * (2 * ck),
        ch2=Degree2(w=GPoly((ck2,))) + Degree2(q=GPoly((12 * cc2,)), w=GPoly((-cc2,))),
    )


@dataclass(frozen=True)
class StructureCheckEntry:
    power: int
    ok: bool
    defect: tuple[tuple[str, GPoly], ...]


@dataclass(frozen=True)
class StructureCheckResult:
    d: int
    variant: str
    entries: tuple[StructureCheckEntry, ...]

    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)


def structure_sequence_check(
    d: int, ledger: ConventionLedger = DEFAULT_LEDGER
) -> StructureCheckResult:
    """Check the two twisted structure sequences of the cover in K-theory.

    Pushing 0 -> O_P -> alpha_*O_C -> E^dual -> 0 and its omega-twist gives

        l = 0:  ch(alpha_* O_C)     = 1 + dual(ch E)
        l = 1:  ch(alpha_* omega)   = 1 + ch E

    Both hold under the derived w-coefficient; the published variant fails
    the l = 1 check with defect exactly +w.
    """
    targets = {0: CH_ONE + trunc_dual(ch_E(d)), 1: CH_ONE + ch_E(d)}
    entries = []
    for l in (0, 1):
        got = ch_pushforward_omega_power(d, l, ledger)
        diff = chern_diff(got, targets[l])
        entries.append(StructureCheckEntry(l, not diff, tuple(diff.items())))
    return StructureCheckResult(d, ledger.ell_coeff, tuple(entries))


@dataclass(frozen=True)
class WedgeOracleConfig:
    """Randomized splitting-principle check of the exterior-power identities."""

    rank: int
    trials: int = 30
    seed: int = 0

    def __post_init__(self):
        if not 3 <= self.rank <= 16:
            raise ValueError(f"oracle rank must be in [3, 16], got {self.rank}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")


@dataclass(frozen=True)
class WedgeOracleReport:
    rank: int
    trials: int
    seed: int
    checks: int
    # fully matching trials per exterior power: (l, matched, trials)
    per_l: tuple[tuple[int, int, int], ...]
    # (l, trial, component) for every failed comparison
    mismatches: tuple[tuple[int, int, str], ...]

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def splitting_check(roots) -> tuple[int, list[tuple[int, str]]]:
    """Compare subset-enumerated wedge invariants against the closed forms.

    Enumerates every subset S of the given rational Chern roots literally,
    accumulating per-cardinality counts, sums of root-sums and sums of
    squared root-sums, then checks for each l:

        rank:  #S               vs C(r, l)
        c1:    sum_S sum_(i in S) t_i   vs C(r-1, l-1) * c1
        ch2:   sum_S (sum t_i)^2 / 2    vs C(r-1, l-1) q + (1/2) C(r-2, l-2) (s - 2q)

    with c1 = sum t_i, q = (sum t_i^2)/2, s = c1^2.  Returns (number of
    comparisons, list of (l, component) failures).  The enumeration never
    consults the closed forms it is checking.
    """
    roots = [Fraction(t) for t in roots]
    r = len(roots)
    den = lcm(*(t.denominator for t in roots)) if roots else 1
    nums = [t.numerator * (den // t.denominator) for t in roots]
    subsets = [(0, 0)]
    for v in nums:
        subsets += [(c + 1, s + v) for (c, s) in subsets]
    cnt = [0] * (r + 1)
    tot1 = [0] * (r + 1)
    tot2 = [0] * (r + 1)
    for c, s in subsets:
        cnt[c] += 1
        tot1[c] += s
        tot2[c] += s * s
    c1 = Fraction(sum(nums), den)
    q = Fraction(sum(v * v for v in nums), 2 * den * den)
    s2 = c1 * c1
    checks = 0
    bad: list[tuple[int, str]] = []
    for l in range(r + 1):
        predicted = (
            ("rank", Fraction(cnt[l]), binomial(r, l)),
            ("c1", Fraction(tot1[l], den), binomial(r - 1, l - 1) * c1),
            (
                "ch2",
                Fraction(tot2[l], 2 * den * den),
                binomial(r - 1, l - 1) * q + binomial(r - 2, l - 2) * _HALF * (s2 - 2 * q),
            ),
        )
        for name, enumerated, closed in predicted:
            checks += 1
            if enumerated != closed:
                bad.append((l, name))
    return checks, bad


def wedge_oracle(config: WedgeOracleConfig) -> WedgeOracleReport:
    """Run seeded trials of splitting_check on random rational Chern roots."""
    rng = random.Random(config.seed)
    r = config.rank
    checks = 0
    mismatches: list[tuple[int, int, str]] = []
    matched = [0] * (r + 1)
    for trial in range(config.trials):
        roots = [Fraction(rng.randint(-30, 30), rng.randint(1, 8)) for _ in range(r)]
        n, bad = splitting_check(roots)
        checks += n
        bad_l = {l for l, _ in bad}
        for l in range(r + 1):
            if l not in bad_l:
                matched[l] += 1
        mismatches += [(l, trial, comp) for l, comp in bad]
    mismatches.sort()
    return WedgeOracleReport(
        rank=r,
        trials=config.trials,
        seed=config.seed,
        checks=checks,
        per_l=tuple((l, matched[l], config.trials) for l in range(r + 1)),
        mismatches=tuple(mismatches),
    )
