"""Exact verification engine for syzygy divisor classes on Hurwitz spaces.

Reconstructs, with exact rational arithmetic, the divisor classes of the
loci where the syzygy bundles of a degree-d cover fail to be balanced, and
audits every intermediate pushforward relation the computation rests on.
"""

from syzdiv.exact import GENUS, GP_ONE, GP_ZERO, GPoly, Rational, binomial
from syzdiv.intersection import (
    C1E,
    CH_ONE,
    DEFAULT_LEDGER,
    OMEGA_ALPHA,
    OMEGA_PI,
    PAPER_LEDGER,
    PULL_SIGMA,
    SIGMA,
    CDegree1,
    ConventionLedger,
    Degree2,
    DivisorClass,
    PDegree1,
    TruncatedChern,
    branch_degree,
    branch_half,
    chern_diff,
    derived_ch2_push,
    lambda_expand,
    line_character,
    pair_on_C,
    pair_on_P,
    prod1,
    push_degree2,
    trunc_dual,
    trunc_mul,
    trunc_twist,
)
from syzdiv.chern import (
    StructureCheckResult,
    WedgeOracleConfig,
    WedgeOracleReport,
    ch_E,
    ch_pushforward_omega_power,
    ch_wedge_E,
    splitting_check,
    structure_sequence_check,
    wedge_oracle,
)
from syzdiv.koszul import (
    KoszulTerm,
    KoszulTermList,
    assemble_ch_N,
    ch_N_closed,
    ch_N_euler,
    compare_chern,
    deg_N,
    euler_degree,
    koszul_terms,
    rank_N,
)
from syzdiv.divisors import (
    A_coeff,
    CandidateResult,
    IdentityCheckReport,
    InterpretationReport,
    MuClassResult,
    RelationRecord,
    binomial_identity_check,
    bogomolov_class,
    identity_closed,
    identity_sum,
    interpretation_search,
    mu_class,
    mu_class_printed,
    relation_r7_readings,
    relations_audit,
    sum_check_5_6,
)
from syzdiv.report import (
    CaseSummary,
    VerificationReport,
    VerifyConfig,
    emit,
    exit_code_for,
    report_from_dict,
    report_to_dict,
    run_verify,
)

__version__ = "0.1.0"
