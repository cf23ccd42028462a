import pytest

from helpers import university
from qabduct import (
    ABox, ArityMismatch, Atom, CQ, Functionality, InvalidInput, QAP, RoleExpr, RoleInclusion, TBox, UCQ,
    UnsafeQuery, Variable, assertion, concept, is_unrestricted, max_atoms, max_terms, role, sigma_of,
    validate_dllite,
)
from qabduct.model import Individual, anonymous, fresh_anonymous, is_sigma_abox

x, y, z = Variable("x"), Variable("y"), Variable("z")


def test_university_tbox_is_valid():
    assert validate_dllite(university().tbox).valid


def test_specialized_functional_role_is_reported():
    bad = TBox([Functionality(RoleExpr("P")), RoleInclusion(RoleExpr("R"), RoleExpr("P"))])
    report = validate_dllite(bad)
    assert not report.valid
    assert len(report.violations) == 1
    assert validate_dllite(TBox([])).valid


def test_sigma_of_university():
    p = university()
    names = {s.name for s in sigma_of(p.tbox, p.abox, p.query)}
    assert names == {"enroll", "teach", "Student", "Course", "Lecturer", "DPhil"}


def test_sigma_of_small_cases():
    q = CQ([x], [Atom(concept("B"), (x,))])
    assert sigma_of(TBox([]), ABox([assertion("A", "c")]), q) == {concept("A"), concept("B")}
    assert sigma_of(TBox([]), ABox([]), CQ([], [Atom(concept("DPhil"), (z,))])) == {concept("DPhil")}


def test_is_unrestricted():
    p = university()
    assert not is_unrestricted(p)
    full = sigma_of(p.tbox, p.abox, p.query)
    assert is_unrestricted(p.replace(sigma=full))
    assert is_unrestricted(p.replace(sigma=full | {concept("Fresh")}))


def test_is_sigma_abox():
    sigma = {role("enroll"), role("teach")}
    assert is_sigma_abox(ABox([assertion("enroll", "Beppe", "IDB")]), sigma)
    assert not is_sigma_abox(ABox([assertion("DPhil", "Luca")]), sigma)
    assert is_sigma_abox(ABox([]), sigma)


def test_query_size_measures():
    q = university().query
    assert (max_atoms(q), max_terms(q)) == (3, 3)
    iq = CQ([x], [Atom(concept("A"), (x,))])
    assert (max_atoms(iq), max_terms(iq)) == (1, 1)
    two = CQ([], [Atom(concept("A"), (x,)), Atom(concept("B"), (x,))])
    three = CQ([], [Atom(concept("A"), (x,)), Atom(concept("B"), (y,)), Atom(concept("C"), (z,))])
    assert max_atoms(UCQ([two, three])) == 3


def test_fresh_anonymous_sequence():
    assert fresh_anonymous({Individual("Anna"), Individual("KR")}) == anonymous(1)
    assert fresh_anonymous({anonymous(1)}) == anonymous(2)
    assert fresh_anonymous(()) == anonymous(1)
    assert anonymous(1).anonymous and not Individual("Anna").anonymous


def test_constructors_reject_bad_input():
    with pytest.raises(ArityMismatch):
        Atom(role("R"), (x,))
    with pytest.raises(UnsafeQuery):
        CQ([y], [Atom(concept("A"), (x,))])
    with pytest.raises(InvalidInput):
        concept("")
    p = university()
    with pytest.raises(ArityMismatch):
        p.replace(tuple_=())
    with pytest.raises(InvalidInput):
        p.replace(sigma=())
    with pytest.raises(InvalidInput):
        QAP(p.tbox, ABox([assertion("A", "_:a1")]), p.query, p.tuple, p.sigma)


def test_role_inverse_is_an_involution():
    r = RoleExpr("R")
    assert r.inverse().inverse() == r
    assert r.inverse() != r
