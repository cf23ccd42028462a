"""Seeded random abduction problems over a small vocabulary."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..model import (
    ABox, Assertion, Atom, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, Exists,
    Functionality, Individual, QAP, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ, Variable,
    concept, role, sigma_of, validate_dllite,
)
from ..reasoner import is_consistent_una


@dataclass(frozen=True)
class Profile:
    max_axioms: int = 4
    max_assertions: int = 6
    max_atoms: int = 3
    max_disjuncts: int = 2
    max_arity: int = 1
    concepts: tuple = ("A", "B", "C")
    roles: tuple = ("P", "R")
    individuals: tuple = ("a", "b")
    # None draws the signature kind at random
    unrestricted: Optional[bool] = None
    instance_query: bool = False
    p_negative: float = 0.3
    p_funct: float = 0.15
    p_constant: float = 0.1

    def __post_init__(self) -> None:
        if min(self.max_atoms, self.max_disjuncts) < 1 or self.max_axioms < 0 or self.max_assertions < 0:
            raise ValueError("profile bounds must be positive")
        if not self.concepts or not self.individuals:
            raise ValueError("profile needs at least one concept and one individual")


def _basic(rng: random.Random, prof: Profile):
    options = [AtomicConcept(c) for c in prof.concepts]
    options += [Exists(RoleExpr(r, inv)) for r in prof.roles for inv in (False, True)]
    return rng.choice(options)


def _role_expr(rng: random.Random, prof: Profile) -> RoleExpr:
    return RoleExpr(rng.choice(prof.roles), rng.random() < 0.3)


def _axiom(rng: random.Random, prof: Profile):
    roll = rng.random()
    if prof.roles and roll < prof.p_funct:
        return Functionality(_role_expr(rng, prof))
    negative = rng.random() < prof.p_negative
    if prof.roles and rng.random() < 0.2:
        lhs, rhs = _role_expr(rng, prof), _role_expr(rng, prof)
        return RoleDisjointness(lhs, rhs) if negative else RoleInclusion(lhs, rhs)
    lhs, rhs = _basic(rng, prof), _basic(rng, prof)
    return ConceptDisjointness(lhs, rhs) if negative else ConceptInclusion(lhs, rhs)


def _tbox(rng: random.Random, prof: Profile) -> TBox:
    while True:
        tbox = TBox(_axiom(rng, prof) for _ in range(rng.randint(0, prof.max_axioms)))
        if validate_dllite(tbox).valid:
            return tbox


def _assertion(rng: random.Random, prof: Profile) -> Assertion:
    inds = [Individual(i) for i in prof.individuals]
    if prof.roles and rng.random() < 0.4:
        return Assertion(role(rng.choice(prof.roles)), (rng.choice(inds), rng.choice(inds)))
    return Assertion(concept(rng.choice(prof.concepts)), (rng.choice(inds),))


def _cq(rng: random.Random, prof: Profile, head: tuple) -> CQ:
    pool = list(head) + [Variable(n) for n in ("u", "v", "w")][: prof.max_atoms]
    while True:
        atoms = []
        for _ in range(rng.randint(1, prof.max_atoms)):
            def term():
                if rng.random() < prof.p_constant:
                    return Individual(rng.choice(prof.individuals))
                return rng.choice(pool)
            if prof.roles and rng.random() < 0.45:
                atoms.append(Atom(role(rng.choice(prof.roles)), (term(), term())))
            else:
                atoms.append(Atom(concept(rng.choice(prof.concepts)), (term(),)))
        used = {t for a in atoms for t in a.args}
        if set(head) <= used:
            return CQ(head, atoms)


def _query(rng: random.Random, prof: Profile) -> UCQ:
    if prof.instance_query:
        return UCQ([CQ((Variable("x"),), [Atom(concept(rng.choice(prof.concepts)), (Variable("x"),))])])
    arity = rng.randint(0, prof.max_arity)
    head = tuple(Variable(n) for n in ("x", "y")[:arity])
    return UCQ(_cq(rng, prof, head) for _ in range(rng.randint(1, prof.max_disjuncts)))


def random_qap(seed: int, profile: Optional[Profile] = None) -> QAP:
    """Deterministic per seed; the ontology is always consistent."""
    prof = profile or Profile()
    rng = random.Random(seed)
    while True:
        tbox = _tbox(rng, prof)
        for _ in range(50):
            abox = ABox(_assertion(rng, prof) for _ in range(rng.randint(0, prof.max_assertions)))
            if is_consistent_una(tbox, abox):
                break
        else:
            continue
        break
    query = _query(rng, prof)
    tup = tuple(Individual(rng.choice(prof.individuals)) for _ in range(query.arity))
    unrestricted = prof.unrestricted if prof.unrestricted is not None else rng.random() < 0.5
    vocab = sorted(sigma_of(tbox, abox, query))
    if unrestricted:
        sigma = frozenset(vocab)
    else:
        sigma = frozenset(rng.sample(vocab, rng.randint(1, min(3, len(vocab)))))
    return QAP(tbox, abox, query, tup, sigma)
