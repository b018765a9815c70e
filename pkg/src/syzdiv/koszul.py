"""Euler-characteristic assembly of the syzygy bundle characters.

The i-th syzygy bundle N_i of a degree-d cover sits in an exact complex
whose other terms are exterior powers of E tensored with direct images of
powers of the relative dualizing sheaf.  Solving that complex in K-theory
expresses ch(N_i) as a signed sum

    sum_{j=0}^{i+1} (-1)^(j-1) ch(wedge^(i+1-j) E) . ch(push omega^j)
    - ch(wedge^i E) + ch(wedge^(i+1) E) . ch(E^dual),

normalized by a global sign so the rank comes out positive (the recorded
sign absorbs the alternative exponent convention, which differs by (-1)^i).
The closed forms for rank, degree and the full truncated character are kept
separate so the assembly can be audited against them case by case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from syzdiv.chern import ch_E, ch_pushforward_omega_power, ch_wedge_E
from syzdiv.exact import GPoly, binomial
from syzdiv.intersection import (
    C1E,
    DEFAULT_LEDGER,
    ConventionLedger,
    Degree2,
    TruncatedChern,
    chern_diff,
    trunc_dual,
)

# re-exported under the name the rest of the library uses for it
compare_chern = chern_diff

_HALF = Fraction(1, 2)


def _check_case(d: int, i: int) -> None:
    if d < 4:
        raise ValueError(f"cover degree must be at least 4, got {d}")
    if not 1 <= i <= d - 3:
        raise ValueError(f"syzygy index {i} outside [1, {d - 3}] for degree {d}")


@dataclass(frozen=True)
class KoszulTerm:
    label: str
    j: int | None  # position in the j-sum; None for the two corrections
    sign: int
    chern: TruncatedChern


@dataclass(frozen=True)
class KoszulTermList:
    d: int
    i: int
    terms: tuple[KoszulTerm, ...]

    def signed_sum(self) -> TruncatedChern:
        total = TruncatedChern()
        for t in self.terms:
            total = total + t.chern * t.sign
        return total


def koszul_terms(d: int, i: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> KoszulTermList:
    """All signed terms of the Euler-characteristic expression for ch(N_i)."""
    _check_case(d, i)
    terms = []
    for j in range(i + 2):
        sign = -1 if (j - 1) % 2 else 1
        product = ch_wedge_E(d, i + 1 - j) * ch_pushforward_omega_power(d, j, ledger)
        terms.append(KoszulTerm(f"wedge^{i + 1 - j}(E).push(omega^{j})", j, sign, product))
    terms.append(KoszulTerm(f"wedge^{i}(E)", None, -1, ch_wedge_E(d, i)))
    terms.append(
        KoszulTerm(
            f"wedge^{i + 1}(E).dual(E)", None, 1, ch_wedge_E(d, i + 1) * trunc_dual(ch_E(d))
        )
    )
    return KoszulTermList(d, i, tuple(terms))


def assemble_ch_N(
    d: int, i: int, ledger: ConventionLedger = DEFAULT_LEDGER
) -> tuple[TruncatedChern, int]:
    """Signed Koszul sum for ch(N_i), normalized to positive rank.

    Returns (character, applied_sign); errors if the signed rank vanishes.
    """
    total = koszul_terms(d, i, ledger).signed_sum()
    rank = total.rank.constant()
    if rank == 0:
        raise ValueError(f"signed rank sum vanishes at (d={d}, i={i})")
    if rank < 0:
        return -total, -1
    return total, 1


def ch_N_euler(d: int, i: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> TruncatedChern:
    """ch(N_i) by Euler-characteristic assembly."""
    return assemble_ch_N(d, i, ledger)[0]


def ch_N_closed(d: int, i: int) -> TruncatedChern:
    """Closed form of ch(N_i):

        rank = i (d-2-i) / (d-1) * C(d, i+1)
        c1   = (d-2-i) C(d-2, i-1) c1(E)
        ch2  = C(d-4, i-1) [ d ch2(E)
                             + ((d-4)i + 2) / (2 (d-i-1)) c1(E)^2 - w ]
    """
    _check_case(d, i)
    c2outer = binomial(d - 4, i - 1)
    scoeff = Fraction((d - 4) * i + 2, 2 * (d - i - 1))
    return TruncatedChern(
        rank=GPoly((rank_N(d, i),)),
        c1=C1E * ((d - 2 - i) * binomial(d - 2, i - 1)),
        ch2=Degree2(
            q=GPoly((c2outer * d,)),
            s=GPoly((c2outer * scoeff,)),
            w=GPoly((-c2outer,)),
        ),
    )


def rank_N(d: int, i: int) -> Fraction:
    """Rank of N_i: i (d-2-i)/(d-1) * C(d, i+1); always a positive integer.

    The last bundle in the resolution (i = d-2) is the determinant line
    bundle of E, rank 1, where the product formula degenerates to zero.
    """
    if d < 3:
        raise ValueError(f"cover degree must be at least 3, got {d}")
    if not 1 <= i <= d - 2:
        raise ValueError(f"syzygy index {i} outside [1, {d - 2}] for degree {d}")
    if i == d - 2:
        return Fraction(1)
    return Fraction(i * (d - 2 - i), d - 1) * binomial(d, i + 1)


def deg_N(d: int, i: int) -> GPoly:
    """Fiber degree of N_i as a polynomial in g: (d-2-i)(g+d-1) C(d-2, i-1)."""
    _check_case(d, i)
    return GPoly((d - 1, 1)) * ((d - 2 - i) * binomial(d - 2, i - 1))


def euler_degree(d: int, i: int, ledger: ConventionLedger = DEFAULT_LEDGER) -> GPoly:
    """Fiber degree read off the assembled character.

    The c1 of the assembly is a multiple of c1(E) (its sigma part cancels);
    c1(E) has fiber degree g+d-1.
    """
    assembled = ch_N_euler(d, i, ledger)
    if not assembled.c1.sigma.is_zero():
        raise ValueError(f"assembled c1 has a sigma component at (d={d}, i={i})")
    return assembled.c1.c1E * GPoly((d - 1, 1))
