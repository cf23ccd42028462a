"""Abductive explanations for missing answers over DL-Lite_A ontologies."""

from .abduction import (
    Explanation, direct_instantiation, enumerate_minimal, exists_explanation, has_explanation, has_subexpl,
    instantiations, isNEC, is_necessary, is_relevant, no_smaller, recognize, relevance_witness, size_in,
    size_out,
)
from .errors import (
    ArityMismatch, BudgetTooLarge, FunctionalityConflict, Inconsistent, InvalidInput, InvalidTBox,
    NotAbducible, NotAnExplanation, ParseError, PreconditionViolated, QabductError, RestrictedSignature,
    TooLarge, UnsafeQuery,
)
from .evaluator import INCONSISTENT, FiniteInterpretation, certain_answers, db_of, evaluate, is_certain
from .formats import (
    format_abox, format_query, format_signature, format_tbox, parse_abox, parse_assertion, parse_individuals,
    parse_query, parse_signature, parse_tbox,
)
from .model import (
    ABox, Assertion, Atom, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, Exists, Functionality,
    Individual, PreferenceOrder, Predicate, QAP, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ,
    Variable, assertion, concept, is_unrestricted, max_atoms, max_terms, role, sigma_of, validate_dllite,
)
from .reasoner import (
    entails_assertion, find_clash, is_consistent_nouna, is_consistent_una, negative_closure, quotient_nouna,
)
from .reductions import (
    exist_to_rel, is_query_nonempty, nec_to_nonexist, nonemptiness_to_exist, nonexist_to_nec, rel_to_exist,
)
from .rewriter import Reformulation, perfect_reformulation

__version__ = "0.1.0"
