import pytest
from hypothesis import given

from helpers import university
from qabduct import (
    ABox, AtomicConcept, ConceptDisjointness, ConceptInclusion, Exists, Functionality, InvalidTBox, RoleExpr,
    RoleInclusion, TBox, assertion, entails_assertion, find_clash, is_consistent_nouna, is_consistent_una,
    negative_closure, quotient_nouna,
)
from qabduct.testkit import bounded_model_consistency
from strategies import aboxes, tboxes

A, B, C = AtomicConcept("A"), AtomicConcept("B"), AtomicConcept("C")
R = RoleExpr("R")


def test_closure_of_university_adds_nothing():
    closure = negative_closure(university().tbox)
    assert closure.trivial


def test_closure_propagates_disjointness():
    dphil, student, course = AtomicConcept("DPhil"), AtomicConcept("Student"), AtomicConcept("Course")
    t = TBox([ConceptInclusion(dphil, student), ConceptDisjointness(student, course)])
    assert ConceptDisjointness(dphil, course) in negative_closure(t).disjointnesses or \
        ConceptDisjointness(course, dphil) in negative_closure(t).disjointnesses
    t2 = TBox([ConceptInclusion(Exists(RoleExpr("teach", True)), course), ConceptDisjointness(course, student)])
    found = negative_closure(t2).disjointnesses
    target = {Exists(RoleExpr("teach", True)), student}
    assert any(isinstance(d, ConceptDisjointness) and {d.lhs, d.rhs} == target for d in found)


def test_consistency_examples():
    p = university()
    assert is_consistent_una(p.tbox, p.abox)
    assert is_consistent_nouna(p.tbox, p.abox)
    assert not is_consistent_una(TBox([ConceptDisjointness(A, A)]), ABox([assertion("A", "c")]))
    t = p.tbox.with_axioms(ConceptDisjointness(AtomicConcept("Student"), AtomicConcept("Lecturer")))
    assert not is_consistent_una(t, p.abox | {assertion("teach", "Anna", "KR")})


def test_functionality_with_and_without_una():
    t = TBox([Functionality(R)])
    fork = ABox([assertion("R", "a", "b"), assertion("R", "a", "c")])
    assert not is_consistent_una(t, fork)
    assert is_consistent_nouna(t, fork)
    assert len(quotient_nouna(t, fork).individuals) == 2
    t2 = t.with_axioms(ConceptDisjointness(B, C))
    assert not is_consistent_nouna(t2, fork | {assertion("B", "b"), assertion("C", "c")})


def test_find_clash_names_the_problem():
    assert find_clash(TBox([]), ABox([assertion("A", "a")])) is None
    assert find_clash(TBox([ConceptDisjointness(A, B)]), [assertion("A", "a"), assertion("B", "a")])


def test_entailment_examples():
    p = university()
    assert entails_assertion(p.tbox, p.abox, assertion("Student", "Anna"))
    assert not entails_assertion(p.tbox, p.abox, assertion("teach", "Carlo", "KR"))
    assert entails_assertion(TBox([ConceptDisjointness(A, A)]), ABox([assertion("A", "c")]), assertion("B", "d"))


def test_invalid_tbox_is_refused():
    bad = TBox([Functionality(R), RoleInclusion(RoleExpr("S"), R)])
    with pytest.raises(InvalidTBox):
        is_consistent_una(bad, ABox([]))


@given(tboxes, aboxes())
def test_una_consistency_implies_nouna(tbox, abox):
    if is_consistent_una(tbox, abox):
        assert is_consistent_nouna(tbox, abox)


@given(tboxes, aboxes())
def test_consistency_is_antitone_in_the_abox(tbox, abox):
    if is_consistent_una(tbox, abox):
        facts = sorted(abox)
        assert is_consistent_una(tbox, ABox(facts[: len(facts) // 2]))


@given(tboxes.filter(lambda t: not any(isinstance(a, Functionality) for a in t)), aboxes(max_size=4))
def test_matches_small_models_without_functionality(tbox, abox):
    bound = len(abox.individuals) + len(tbox) + 1
    assert is_consistent_una(tbox, abox) == bounded_model_consistency(tbox, abox, bound)


@given(tboxes, aboxes(max_size=4))
def test_asserted_facts_are_entailed(tbox, abox):
    for fact in abox:
        assert entails_assertion(tbox, abox, fact)
