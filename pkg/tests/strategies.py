"""Hypothesis strategies over a small fixed vocabulary."""

from hypothesis import strategies as st

from qabduct import (
    ABox, Assertion, Atom, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, Exists, Functionality,
    Individual, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ, Variable, concept, role, validate_dllite,
)
from qabduct.model import anonymous

CONCEPTS = [concept(n) for n in ("A", "B", "C")]
ROLES = [role(n) for n in ("P", "R")]
NAMES = [Individual(n) for n in ("a", "b", "c")]
VARS = [Variable(n) for n in ("x", "y", "z")]

role_exprs = st.builds(RoleExpr, st.sampled_from(["P", "R"]), st.booleans())
basics = st.one_of(st.builds(AtomicConcept, st.sampled_from(["A", "B", "C"])), st.builds(Exists, role_exprs))
axioms = st.one_of(
    st.builds(ConceptInclusion, basics, basics),
    st.builds(ConceptInclusion, basics, basics),
    st.builds(ConceptDisjointness, basics, basics),
    st.builds(RoleInclusion, role_exprs, role_exprs),
    st.builds(RoleDisjointness, role_exprs, role_exprs),
    st.builds(Functionality, role_exprs),
)
tboxes = st.lists(axioms, max_size=5).map(TBox).filter(lambda t: validate_dllite(t).valid)


def _assertion(draw, inds):
    if draw(st.booleans()):
        return Assertion(draw(st.sampled_from(CONCEPTS)), (draw(st.sampled_from(inds)),))
    return Assertion(draw(st.sampled_from(ROLES)), (draw(st.sampled_from(inds)), draw(st.sampled_from(inds))))


@st.composite
def assertions(draw, anonymous_ok: bool = False):
    inds = NAMES + ([anonymous(1), anonymous(2)] if anonymous_ok else [])
    return _assertion(draw, inds)


@st.composite
def aboxes(draw, max_size: int = 6, anonymous_ok: bool = False):
    return ABox(draw(st.lists(assertions(anonymous_ok), max_size=max_size)))


@st.composite
def cqs(draw, arity: int | None = None, max_atoms: int = 3):
    terms = VARS + NAMES[:1]
    atoms = []
    for _ in range(draw(st.integers(1, max_atoms))):
        if draw(st.booleans()):
            atoms.append(Atom(draw(st.sampled_from(CONCEPTS)), (draw(st.sampled_from(terms)),)))
        else:
            atoms.append(Atom(draw(st.sampled_from(ROLES)),
                              (draw(st.sampled_from(terms)), draw(st.sampled_from(terms)))))
    present = sorted({t for a in atoms for t in a.args if isinstance(t, Variable)}, key=lambda v: v.name)
    k = draw(st.integers(0, min(len(present), 2))) if arity is None else min(arity, len(present))
    return CQ(present[:k], atoms)


@st.composite
def ucqs(draw):
    first = draw(cqs())
    rest = [draw(cqs(arity=first.arity)) for _ in range(draw(st.integers(0, 1)))]
    return UCQ([first] + [c for c in rest if c.head == first.head])
