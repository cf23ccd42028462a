from hypothesis import given, settings

from helpers import university
from qabduct import (
    ABox, Atom, AtomicConcept, CQ, ConceptInclusion, Exists, RoleExpr, TBox, UCQ, Variable, assertion, concept,
    db_of, evaluate, is_consistent_una, max_atoms, perfect_reformulation, role,
)
from qabduct.rewriter import atom_rewrite_step, canonical_cq, reduce_step
from qabduct.testkit import chase_answers
from strategies import aboxes, tboxes, ucqs

x, y, w = Variable("x"), Variable("y"), Variable("w")


def _keys(disjuncts):
    return {canonical_cq(cq) for cq in disjuncts}


def test_course_rewriting():
    q = UCQ([CQ([x], [Atom(concept("Course"), (x,))])])
    got = _keys(perfect_reformulation(q, university().tbox).disjuncts)
    want = _keys([
        CQ([x], [Atom(concept("Course"), (x,))]),
        CQ([x], [Atom(role("teach"), (y, x))]),
        CQ([x], [Atom(role("enroll"), (y, x))]),
    ])
    assert got == want


def test_student_rewriting_contains_expected_disjuncts():
    q = UCQ([CQ([x], [Atom(concept("Student"), (x,))])])
    got = _keys(perfect_reformulation(q, university().tbox).disjuncts)
    assert {canonical_cq(CQ([x], [Atom(concept("DPhil"), (x,))])),
            canonical_cq(CQ([x], [Atom(role("enroll"), (x, y))]))} <= got


@given(ucqs())
def test_empty_tbox_leaves_query_alone(q):
    got = _keys(perfect_reformulation(q, TBox([])).disjuncts)
    assert got <= _keys(q.disjuncts)
    # dropped disjuncts must be subsumed by a kept one, so answers agree
    db = db_of(ABox([assertion("A", "a"), assertion("R", "a", "a"), assertion("P", "a", "b")]))
    assert evaluate(UCQ(list(got)), db) == evaluate(q, db)


def test_university_query_size_bounds():
    p = university()
    for cq in perfect_reformulation(p.query, p.tbox):
        assert len(cq.body) <= 3 and len(cq.terms) <= 6


def test_atom_rewrite_step_cases():
    course = Atom(concept("Course"), (x,))
    got = atom_rewrite_step(course, ConceptInclusion(Exists(RoleExpr("teach", True)), AtomicConcept("Course")),
                            fresh=w)
    assert got == Atom(role("teach"), (w, x))
    student = Atom(concept("Student"), (x,))
    assert atom_rewrite_step(student, ConceptInclusion(AtomicConcept("DPhil"), AtomicConcept("Student"))) == \
        Atom(concept("DPhil"), (x,))
    teach = Atom(role("teach"), (x, y))
    assert atom_rewrite_step(teach, ConceptInclusion(AtomicConcept("DPhil"), AtomicConcept("Student"))) is None


def test_reduce_step_cases():
    t1, t2 = Atom(role("teach"), (x, y)), Atom(role("teach"), (x, w))
    reduced = reduce_step(CQ([x, y], [t1, t2]), t1, t2)
    assert reduced is not None and reduced.body == frozenset({t1})
    e = Atom(role("enroll"), (x, y))
    assert reduce_step(CQ([x], [t1, e]), t1, e) is None


@settings(max_examples=80)
@given(tboxes, aboxes(max_size=5), ucqs())
def test_rewriting_matches_chase(tbox, abox, q):
    if not is_consistent_una(tbox, abox):
        return
    ref = perfect_reformulation(q, tbox)
    m = max_atoms(q)
    for cq in ref.disjuncts:
        assert len(cq.body) <= m
        assert cq.predicates <= tbox.predicates | q.predicates
    assert evaluate(ref.ucq, db_of(abox)) == chase_answers(q, tbox, abox)
