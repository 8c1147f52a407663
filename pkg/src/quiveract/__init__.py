"""Partial actions of finite groups on quivers and path algebras, computed exactly."""

from .dsl import DSLError, parse_instance, serialize_instance
from .group import FiniteGroup, from_permutations, from_table, make_cyclic, validate_group
from .pathalg import (
    AlgebraElement,
    AlgebraPartialAction,
    Path,
    PathAlgebra,
    SubalgebraSpan,
    canonical_algebra_isomorphism,
    check_algebra_globalization,
    check_not_ideal,
    check_subalgebra_partial_action,
    enumerate_paths,
    generated_subalgebra,
    induced_partial_action,
    multiply,
    sum_of_translates,
    truncated_dimension,
)
from .quiver import (
    Arrow,
    Quiver,
    QuiverMorphism,
    Subquiver,
    automorphisms,
    compose_morphisms,
    export_dot,
    invert_morphism,
    is_isomorphism,
    restrict_morphism,
    validate_quiver,
    validate_subquiver,
)
from .quiver_paction import (
    EnvelopingQuiverAction,
    GlobalQuiverAction,
    QuiverPartialAction,
    check_enveloping,
    check_global_quiver_action,
    check_quiver_partial_action,
    envelope_quiver_action,
    enveloping_isomorphism,
    global_action_from_generators,
    make_partial_action,
    restrict_global_action,
)
from .report import ValidationReport, Violation
from .setaction import (
    GlobalSetAction,
    InvalidActionError,
    SetPartialAction,
    check_partial_set_action,
    globalize_set_action,
    restrict_set_action,
)

__version__ = "0.1.0"
