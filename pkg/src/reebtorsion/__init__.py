"""Homology bookkeeping for Reeb spaces built by bubbling operations."""

from .bubbling import (
    BubblingOp,
    OpKind,
    Plan,
    ReebState,
    TargetFamily,
    apply_plan,
    infer_source_homology,
    initial_disc_state,
    realized_family,
)
from .chain import ChainComplex, homology, parse_builtin
from .checks import Status, Verdict, check_thm5, check_thm6, necessary_conditions, overall_status
from .groups import FGAbelianGroup, canonicalize, count_subgroups_isomorphic_to, direct_sum, parse_group
from .manifolds import Bouquet, ManifoldProfile, default_catalog, lemma1_transform, validate_profile
from .planner import HypothesisNotMet, plan_prop3, plan_prop4, plan_search, plan_thm2, plan_thm4
from .snf import smith_normal_form

__all__ = [
    "Bouquet",
    "BubblingOp",
    "ChainComplex",
    "FGAbelianGroup",
    "HypothesisNotMet",
    "ManifoldProfile",
    "OpKind",
    "Plan",
    "ReebState",
    "Status",
    "TargetFamily",
    "Verdict",
    "apply_plan",
    "canonicalize",
    "check_thm5",
    "check_thm6",
    "count_subgroups_isomorphic_to",
    "default_catalog",
    "direct_sum",
    "homology",
    "infer_source_homology",
    "initial_disc_state",
    "lemma1_transform",
    "necessary_conditions",
    "overall_status",
    "parse_builtin",
    "parse_group",
    "plan_prop3",
    "plan_prop4",
    "plan_search",
    "plan_thm2",
    "plan_thm4",
    "realized_family",
    "smith_normal_form",
    "validate_profile",
]
