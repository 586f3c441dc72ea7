"""Exact upper bounds on automorphism groups of compact Riemann surfaces by group class."""

from .actions import (
    GeneratingVector,
    MinGenusResult,
    find_generating_vector,
    genus_of_action,
    macbeath_genus,
    min_genus_bounded,
)
from .bounds import (
    CLASSES,
    AttainResult,
    BoundResult,
    ClassContext,
    Witness,
    attainable,
    bound,
    registry,
    witness,
)
from .classify import ClassProfile, classify
from .errors import AutBoundError
from .groups import FiniteGroup, Subgroup, all_subgroups
from .groupspec import construct, load_group
from .numtheory import solve_b
from .signature import (
    FiniteAbelianGroup,
    Signature,
    abelianization,
    derived_chain,
    derived_subgroup_signature,
    enumerate_signatures,
    genus_from_order,
    measure,
    order_from_genus,
    parse_signature,
)
from .snf import smith_normal_form
from .tables import verify_tables

__version__ = "0.1.0"

__all__ = [
    "AttainResult",
    "AutBoundError",
    "BoundResult",
    "CLASSES",
    "ClassContext",
    "ClassProfile",
    "FiniteAbelianGroup",
    "FiniteGroup",
    "GeneratingVector",
    "MinGenusResult",
    "Signature",
    "Subgroup",
    "Witness",
    "abelianization",
    "all_subgroups",
    "attainable",
    "bound",
    "classify",
    "construct",
    "derived_chain",
    "derived_subgroup_signature",
    "enumerate_signatures",
    "find_generating_vector",
    "genus_from_order",
    "genus_of_action",
    "load_group",
    "macbeath_genus",
    "measure",
    "min_genus_bounded",
    "order_from_genus",
    "parse_signature",
    "registry",
    "smith_normal_form",
    "solve_b",
    "verify_tables",
    "witness",
]
