"""Perfect reformulation of UCQs with respect to a DL-Lite_A TBox.

The saturation alternates atom rewriting with positive inclusions and
unification of atoms sharing a predicate.  Queries obtained only by
unification are contained in the query they came from, so they are explored
(they can enable further rewriting) but not reported.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .canon import canonical_labeling
from .errors import InvalidTBox
from .model import (
    Atom, AtomicConcept, CQ, ConceptInclusion, Exists, Individual, PositiveInclusion, RoleExpr,
    RoleInclusion, TBox, UCQ, Variable, as_ucq, concept, role, validate_dllite,
)


@dataclass(frozen=True)
class Reformulation:
    disjuncts: tuple
    query: UCQ
    tbox: TBox

    @property
    def ucq(self) -> UCQ:
        return UCQ(self.disjuncts)

    def __iter__(self):
        return iter(self.disjuncts)

    def __len__(self) -> int:
        return len(self.disjuncts)


# --------------------------------------------------------------------------- canonical forms


def _fixed_key(t) -> tuple:
    return (0, t.name) if isinstance(t, Individual) else (2, t.name)


def cq_key(cq: CQ) -> tuple:
    """Key equal for two CQs iff they coincide up to renaming of non-answer variables."""
    head = set(cq.head)
    raw = [((a.predicate.name, a.predicate.arity), a.args) for a in cq.body]
    key, _ = canonical_labeling(raw, lambda t: isinstance(t, Variable) and t not in head, _fixed_key)
    return (tuple(_fixed_key(t) for t in cq.head), key)


def canonical_cq(cq: CQ) -> CQ:
    """Rename non-answer variables canonically (``v1, v2, …`` avoiding answer names)."""
    head = set(cq.head)
    raw = [((a.predicate.name, a.predicate.arity), a.args) for a in cq.body]
    _, labels = canonical_labeling(raw, lambda t: isinstance(t, Variable) and t not in head, _fixed_key)
    taken = {t.name for t in head}
    names, n = [], 0
    while len(names) < len(labels):
        n += 1
        if f"v{n}" not in taken:
            names.append(f"v{n}")
    rename = {v: Variable(names[i]) for v, i in labels.items()}
    return CQ(cq.head, [Atom(a.predicate, tuple(rename.get(t, t) for t in a.args)) for a in cq.body])


# --------------------------------------------------------------------------- single steps


def dont_care(cq: CQ) -> frozenset[Variable]:
    counts = Counter(t for a in cq.body for t in a.args if isinstance(t, Variable))
    head = set(cq.head)
    return frozenset(v for v, n in counts.items() if n == 1 and v not in head)


def _fresh_variable(cq: CQ) -> Variable:
    used = {t.name for t in cq.terms}
    n = 0
    while f"_w{n}" in used:
        n += 1
    return Variable(f"_w{n}")


def _concept_atom(lhs, t, fresh: Variable) -> Atom:
    if isinstance(lhs, AtomicConcept):
        return Atom(concept(lhs.name), (t,))
    r = lhs.role
    args = (t, fresh) if not r.inverted else (fresh, t)
    return Atom(role(r.base), args)


def atom_rewrite_step(atom: Atom, axiom: PositiveInclusion, unbound: frozenset = frozenset(),
                      fresh: Variable = Variable("_w0")) -> Optional[Atom]:
    """Rewrite ``atom`` backwards through ``axiom`` if it applies.

    ``unbound`` lists the don't-care variables of the surrounding query; ``fresh``
    names the new don't-care variable an existential left side introduces.
    """
    if isinstance(axiom, ConceptInclusion):
        rhs = axiom.rhs
        if atom.predicate.arity == 1:
            if isinstance(rhs, AtomicConcept) and rhs.name == atom.predicate.name:
                return _concept_atom(axiom.lhs, atom.args[0], fresh)
            return None
        if not isinstance(rhs, Exists) or rhs.role.base != atom.predicate.name:
            return None
        s, o = atom.args
        if not rhs.role.inverted and o in unbound:
            return _concept_atom(axiom.lhs, s, fresh)
        if rhs.role.inverted and s in unbound:
            return _concept_atom(axiom.lhs, o, fresh)
        return None
    if isinstance(axiom, RoleInclusion):
        if atom.predicate.arity != 2 or axiom.rhs.base != atom.predicate.name:
            return None
        s, o = atom.args
        # Express the atom in the orientation of the axiom's right side, then read
        # the left side with the same orientation.
        if axiom.rhs.inverted:
            s, o = o, s
        lhs: RoleExpr = axiom.lhs
        return Atom(role(lhs.base), (s, o) if not lhs.inverted else (o, s))
    return None


def _unify(a1: Atom, a2: Atom, head: set) -> Optional[dict]:
    parent: dict = {}

    def find(t):
        while parent.get(t, t) != t:
            t = parent[t]
        return t

    for s, t in zip(a1.args, a2.args):
        rs, rt = find(s), find(t)
        if rs == rt:
            continue
        if isinstance(rs, Individual) and isinstance(rt, Individual):
            return None
        parent[rs] = rt
        parent.setdefault(rt, rt)

    classes: dict = {}
    for t in list(parent):
        classes.setdefault(find(t), []).append(t)

    def rank(t) -> tuple:
        if isinstance(t, Individual):
            return (0, t.name)
        if t in head:
            return (1, t.name)
        return (2, t.name)

    subst = {}
    for members in classes.values():
        rep = min(members, key=rank)
        for m in members:
            if m != rep:
                subst[m] = rep
    return subst


def reduce_step(cq: CQ, a1: Atom, a2: Atom) -> Optional[CQ]:
    """Unify two atoms with the same predicate and apply the most general unifier."""
    if a1 == a2 or a1.predicate != a2.predicate or a1 not in cq.body or a2 not in cq.body:
        return None
    subst = _unify(a1, a2, set(cq.head))
    if subst is None:
        return None
    apply = lambda t: subst.get(t, t)  # noqa: E731
    head = tuple(apply(t) for t in cq.head)
    body = [Atom(a.predicate, tuple(apply(t) for t in a.args)) for a in cq.body]
    return CQ(head, body)


# --------------------------------------------------------------------------- saturation


@lru_cache(maxsize=2048)
def perfect_reformulation(query: UCQ, tbox: TBox) -> Reformulation:
    report = validate_dllite(tbox)
    if not report.valid:
        raise InvalidTBox(f"functional roles specialized: {report.violations}")
    query = as_ucq(query)
    inclusions = tbox.positive_inclusions

    seen: dict = {}
    kept: set = set()
    queue: deque = deque()

    def push(cq: CQ, report_it: bool, original: bool = False) -> None:
        key = cq_key(cq)
        if key not in seen:
            seen[key] = cq if original else canonical_cq(cq)
            queue.append(seen[key])
        if report_it:
            kept.add(key)

    for cq in query:
        push(cq, True, original=True)
    if inclusions:
        while queue:
            cq = queue.popleft()
            unbound = dont_care(cq)
            fresh = _fresh_variable(cq)
            for atom in cq.atoms:
                for ax in inclusions:
                    new = atom_rewrite_step(atom, ax, unbound, fresh)
                    if new is not None:
                        push(CQ(cq.head, (cq.body - {atom}) | {new}), True)
            atoms = cq.atoms
            for i, a1 in enumerate(atoms):
                for a2 in atoms[i + 1:]:
                    if a1.predicate == a2.predicate:
                        reduced = reduce_step(cq, a1, a2)
                        if reduced is not None:
                            push(reduced, False)

    disjuncts = tuple(seen[k] for k in sorted(kept))
    return Reformulation(disjuncts, query, tbox)
