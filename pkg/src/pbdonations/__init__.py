"""Exact computation for participatory budgeting with voter donations.

Public surface: the instance model (:mod:`pbdonations.model`), utilities and
scores (:mod:`pbdonations.scoring`), winner determination for the four plain
rules plus the additive-sum dynamic program (:mod:`pbdonations.solve`), the
sequential and dominance-based donation handling variants
(:mod:`pbdonations.variants`), improving-donation search
(:mod:`pbdonations.donation`), desideratum checkers and the counterexample
fuzzer (:mod:`pbdonations.axioms`), and the JSON document format
(:mod:`pbdonations.serialize`).
"""

from .axioms import (
    AxiomId,
    FuzzConfig,
    FuzzReport,
    Perturbation,
    Violation,
    check_no_harm,
    check_project_mono,
    check_voter_mono,
    check_welfare_mono,
    fuzz,
    replay_violation,
    shrink_violation,
    weak_continuity_witness,
)
from .donation import (
    DonationAnswer,
    DonationQuery,
    check_improving,
    find_improving_donation,
)
from .model import (
    Bundle,
    Infeasible,
    Instance,
    NotApplicable,
    PBError,
    Project,
    ResourceLimit,
    Voter,
    build_instance,
    bundle_cost,
    is_exhaustive,
    is_feasible,
    is_j_variant,
    is_satisfaction_consistent,
    reduced_cost,
    replace_donation,
    total_donation,
    type_counts,
    zero_donations,
)
from .scoring import Aggregator, UtilityFlavor, dominates, score, utility
from .serialize import (
    ParseError,
    ValidationError,
    instance_to_document,
    parse_instance,
    serialize_instance,
)
from .solve import (
    DpTable,
    RuleSpec,
    Variant,
    cowinners,
    dp_is_cowinner,
    dp_max_scores,
    is_cowinner,
    solve_plain,
    tie_break_less,
)
from .variants import (
    SequentialRound,
    SequentialTrace,
    pareto_cowinners,
    solve_pareto,
    solve_sequential,
    variant_cowinners,
    winner,
)

__version__ = "0.1.0"
