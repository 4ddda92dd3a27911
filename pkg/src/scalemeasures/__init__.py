"""Conceptual scaling workbench.

Formal contexts and their concept lattices, scale-measures as
continuous views onto a context, the lattice of all coarsenings of a
concept lattice, and an attribute-by-attribute exploration loop that
builds a scale-measure from expert answers.
"""

__version__ = "0.1.0"

from .context import FormalConcept, FormalContext, next_closure
from .errors import (BoundExceededError, DuplicateNameError, FcaError,
                     FormatError, InvalidFamilyError, NotAScaleMeasureError,
                     NotClosedError, RejectedCounterexampleError, ScriptError,
                     UndefinedScoreError, UnknownElementError)
from .explore import (Accept, Answer, Counterexample, ExplorationLimits,
                      ExplorationResult, ExplorationSession, Query,
                      QueryRecord, ScriptStep, accepting_expert,
                      automatic_expert, exhaustive_expert, replay, run,
                      scripted_expert, start_session)
from .export import LatticeGraph, lattice_graph, lattice_to_dot
from .families import ClosureFamily, extent_family, is_closure_family
from .formats import load_context, parse_cxt, write_cxt
from .ideal import (IdealLattice, IdealPropertyReport, count_meet_irreducibles,
                    covers, enumerate_ideal, ideal_join, ideal_meet,
                    induced_closure_operator, is_neutral, join_complement,
                    join_irreducibles, meet_irreducibles, model_family,
                    neutral_elements, property_suite)
from .implications import (ImplicationTheory, ObjectImplication,
                           implication_holds, object_canonical_base)
from .importance import rank_concepts, separation_index
from .scales import (Comparison, ConjunctiveScale, LogicalAttribute,
                     ScaleMeasure, apposition, canonical_representation,
                     canonical_scale, coarsest_measure, compare,
                     conjunctive_normalform, identity_measure, reflected_join)

__all__ = [
    "__version__",
    "Accept",
    "Answer",
    "BoundExceededError",
    "ClosureFamily",
    "Comparison",
    "ConjunctiveScale",
    "Counterexample",
    "DuplicateNameError",
    "ExplorationLimits",
    "ExplorationResult",
    "ExplorationSession",
    "FcaError",
    "FormalConcept",
    "FormalContext",
    "FormatError",
    "IdealLattice",
    "IdealPropertyReport",
    "ImplicationTheory",
    "InvalidFamilyError",
    "LatticeGraph",
    "LogicalAttribute",
    "NotAScaleMeasureError",
    "NotClosedError",
    "ObjectImplication",
    "Query",
    "QueryRecord",
    "RejectedCounterexampleError",
    "ScaleMeasure",
    "ScriptError",
    "ScriptStep",
    "UndefinedScoreError",
    "UnknownElementError",
    "accepting_expert",
    "apposition",
    "automatic_expert",
    "canonical_representation",
    "canonical_scale",
    "coarsest_measure",
    "compare",
    "conjunctive_normalform",
    "count_meet_irreducibles",
    "covers",
    "enumerate_ideal",
    "exhaustive_expert",
    "extent_family",
    "ideal_join",
    "ideal_meet",
    "identity_measure",
    "implication_holds",
    "induced_closure_operator",
    "is_closure_family",
    "is_neutral",
    "join_complement",
    "join_irreducibles",
    "lattice_graph",
    "lattice_to_dot",
    "load_context",
    "meet_irreducibles",
    "model_family",
    "neutral_elements",
    "next_closure",
    "object_canonical_base",
    "parse_cxt",
    "property_suite",
    "rank_concepts",
    "reflected_join",
    "replay",
    "run",
    "scripted_expert",
    "separation_index",
    "start_session",
    "write_cxt",
]
