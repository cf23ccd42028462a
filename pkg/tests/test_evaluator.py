from hypothesis import given

from helpers import university
from qabduct import (
    ABox, Atom, AtomicConcept, CQ, ConceptDisjointness, INCONSISTENT, Individual, TBox, UCQ, Variable, assertion,
    certain_answers, concept, db_of, evaluate, is_certain,
)
from strategies import aboxes, ucqs

z = Variable("z")


def test_db_of_university():
    db = db_of(university().abox)
    assert {i.name for i in db.domain} == {"Anna", "Beppe", "Luca", "Marco", "Carlo", "KR", "IDB"}
    assert {t[0].name for t in db.facts("DPhil", 1)} == {"Anna", "Beppe"}


def test_db_of_small_cases():
    assert not db_of(ABox([])).domain
    db = db_of(ABox([assertion("P", "a", "a")]))
    assert db.facts("P", 2) == {(Individual("a"), Individual("a"))}


def test_evaluate_examples():
    p = university()
    assert evaluate(p.query, db_of(p.abox)) == {(Individual("Marco"),)}
    boolean = UCQ([CQ([], [Atom(concept("DPhil"), (z,))])])
    assert evaluate(boolean, db_of(p.abox)) == {()}
    assert evaluate(boolean, db_of(ABox([]))) == set()


def test_certain_answers_examples():
    p = university()
    assert certain_answers(p.query, p.tbox, p.abox) == {(Individual("Marco"),)}
    extended = p.abox | {assertion("enroll", "Beppe", "IDB")}
    assert (Individual("Carlo"),) in certain_answers(p.query, p.tbox, extended)
    bad = TBox([ConceptDisjointness(AtomicConcept("A"), AtomicConcept("A"))])
    assert certain_answers(p.query, bad, ABox([assertion("A", "c")])) is INCONSISTENT


def test_is_certain_examples():
    p = university()
    carlo, marco = (Individual("Carlo"),), (Individual("Marco"),)
    assert not is_certain(p.query, p.tbox, p.abox, carlo)
    assert is_certain(p.query, p.tbox, p.abox, marco)
    anonymous_course = {assertion("teach", "Carlo", "c1"), assertion("enroll", "Beppe", "c1")}
    assert is_certain(p.query, p.tbox, p.abox | anonymous_course, carlo)


@given(ucqs(), aboxes(), aboxes())
def test_evaluation_is_monotone(q, a1, a2):
    assert evaluate(q, db_of(a1)) <= evaluate(q, db_of(a1 | a2))
