"""Independent oracles: brute-force explanation search, a bounded chase, and finite-model SAT search.

None of these use the abduction engine; they rely on the reasoner and the
evaluator only (and, for the model search, on a SAT solver).
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional

from pysat.solvers import Minisat22

from ..canon import abox_key, canonical_abox
from ..errors import BudgetTooLarge, Inconsistent, InvalidInput
from ..evaluator import FiniteInterpretation, db_of, evaluate, is_certain
from ..model import (
    ABox, Assertion, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, Exists, Functionality,
    Individual, QAP, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ, anonymous, as_ucq, max_atoms,
    max_terms,
)
from ..reasoner import is_consistent_una

DEFAULT_CEILING = 10**7


def candidate_ceiling() -> int:
    raw = os.environ.get("QX_CANDIDATE_CEILING")
    return int(raw) if raw else DEFAULT_CEILING


# --------------------------------------------------------------------------- brute force


def is_explanation(p: QAP, e: Iterable[Assertion]) -> bool:
    """The three defining checks, from first principles."""
    e = list(e)
    if any(a.predicate not in p.sigma for a in e):
        return False
    full = p.abox | e
    return is_consistent_una(p.tbox, full) and is_certain(p.query, p.tbox, full, p.tuple)


def _extensions(s: frozenset, preds, named, budget: int) -> Iterator[Assertion]:
    used = sorted({i for a in s for i in a.args if i.anonymous}, key=lambda i: int(i.name[3:]))
    n = len(used)
    for pred in preds:
        for args in product(range(len(named) + n + 2), repeat=pred.arity):
            # indices past the named ones are anonymous; restricted growth keeps one name per class
            top = n
            inds = []
            ok = True
            for k in args:
                if k < len(named):
                    inds.append(named[k])
                    continue
                a = k - len(named)
                if a > top or a >= budget:
                    ok = False
                    break
                top = max(top, a + 1)
                inds.append(anonymous(a + 1))
            if ok:
                yield Assertion(pred, tuple(inds))


def brute_force_explanations(p: QAP, size_bound: Optional[int] = None, anon_budget: Optional[int] = None,
                             minimal_only: bool = False, ceiling: Optional[int] = None) -> set[ABox]:
    """Every explanation with at most ``size_bound`` assertions, up to anonymous renaming.

    Candidates are built level by level.  A candidate is only kept when all of
    its one-smaller subsets survived the previous level, which prunes supersets
    of inconsistent sets and, with ``minimal_only``, supersets of explanations.
    """
    size_bound = max_atoms(p.query) if size_bound is None else size_bound
    anon_budget = 2 * max_atoms(p.query) if anon_budget is None else anon_budget
    ceiling = candidate_ceiling() if ceiling is None else ceiling
    if size_bound < 0 or anon_budget < 0:
        raise InvalidInput("bounds must be non-negative")
    if not is_consistent_una(p.tbox, p.abox):
        return set()
    preds = sorted(p.sigma & (p.tbox.predicates | p.query.predicates))
    named = sorted(p.individuals)

    keys: dict = {}

    def key_of(s: frozenset) -> tuple:
        got = keys.get(s)
        if got is None:
            got = keys[s] = abox_key(s)
        return got

    found: set = set()
    frontier = {key_of(frozenset()): frozenset()}
    generated = 0
    for level in range(size_bound + 1):
        survivors: dict = {}
        for key, s in frontier.items():
            if is_explanation(p, s):
                found.add(canonical_abox(s))
                if minimal_only:
                    continue
            survivors[key] = s
        if level == size_bound:
            break
        nxt: dict = {}
        for s in survivors.values():
            for beta in _extensions(s, preds, named, anon_budget):
                if beta in s:
                    continue
                bigger = s | {beta}
                key = key_of(bigger)
                if key in nxt:
                    continue
                generated += 1
                if generated > ceiling:
                    raise BudgetTooLarge(f"more than {ceiling} candidates")
                if any(key_of(bigger - {g}) not in survivors for g in bigger):
                    continue
                if not is_consistent_una(p.tbox, p.abox | bigger):
                    continue
                nxt[key] = bigger
        frontier = nxt
    return found


# --------------------------------------------------------------------------- bounded chase


@dataclass(frozen=True, order=True)
class Null:
    """Labelled null introduced by the chase; never a named or anonymous individual."""

    n: int

    @property
    def name(self) -> str:
        return f"_n{self.n}"

    def __str__(self) -> str:
        return self.name


def _elem_key(x) -> tuple:
    return (1, x.n, "") if isinstance(x, Null) else (0, 0, x.name)


def bounded_chase(tbox: TBox, abox: "ABox | Iterable[Assertion]", depth: int) -> FiniteInterpretation:
    abox = abox if isinstance(abox, ABox) else ABox(abox)
    if not is_consistent_una(tbox, abox):
        raise Inconsistent("the chase needs a consistent ontology")
    concepts: dict = defaultdict(set)
    succ: dict = defaultdict(set)  # (role, element) -> successors
    pred: dict = defaultdict(set)
    dist: dict = {}
    for a in abox:
        for i in a.args:
            dist[i] = 0
        if a.predicate.arity == 1:
            concepts[a.predicate.name].add(a.args[0])
        else:
            s, o = a.args
            succ[(a.predicate.name, s)].add(o)
            pred[(a.predicate.name, o)].add(s)

    def add_role(r: RoleExpr, s, o) -> bool:
        if r.inverted:
            s, o = o, s
        if o in succ[(r.base, s)]:
            return False
        succ[(r.base, s)].add(o)
        pred[(r.base, o)].add(s)
        return True

    def outgoing(r: RoleExpr, e) -> set:
        return pred[(r.base, e)] if r.inverted else succ[(r.base, e)]

    def members(b) -> set:
        if isinstance(b, AtomicConcept):
            return set(concepts[b.name])
        return {e for e in dist if outgoing(b.role, e)}

    inclusions = tbox.positive_inclusions
    counter = 0
    while True:
        changed = True
        while changed:
            changed = False
            for ax in inclusions:
                if isinstance(ax, RoleInclusion):
                    for e in list(dist):
                        for o in list(outgoing(ax.lhs, e)):
                            changed |= add_role(ax.rhs, e, o)
                elif isinstance(ax.rhs, AtomicConcept):
                    for e in members(ax.lhs):
                        if e not in concepts[ax.rhs.name]:
                            concepts[ax.rhs.name].add(e)
                            changed = True
        grew = False
        for ax in inclusions:
            if isinstance(ax, ConceptInclusion) and isinstance(ax.rhs, Exists):
                for e in sorted(members(ax.lhs), key=_elem_key):
                    if not outgoing(ax.rhs.role, e) and dist[e] < depth:
                        counter += 1
                        n = Null(counter)
                        dist[n] = dist[e] + 1
                        add_role(ax.rhs.role, e, n)
                        grew = True
        if not grew:
            break

    concept_ext = {k: frozenset((e,) for e in v) for k, v in concepts.items() if v}
    roles: dict = defaultdict(set)
    for (r, s), objs in succ.items():
        for o in objs:
            roles[r].add((s, o))
    return FiniteInterpretation(frozenset(dist), concept_ext, {k: frozenset(v) for k, v in roles.items()})


def chase_answers(query: "CQ | UCQ", tbox: TBox, abox: "ABox | Iterable[Assertion]",
                  depth: Optional[int] = None) -> set[tuple]:
    """Answers over the bounded chase, restricted to tuples of ABox/query individuals."""
    depth = max_terms(query) if depth is None else depth
    db = bounded_chase(tbox, abox, depth)
    return {t for t in evaluate(as_ucq(query), db) if all(isinstance(x, Individual) for x in t)}


# --------------------------------------------------------------------------- finite model search


def _partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _sat_model_exists(tbox: TBox, facts: list[Assertion], size: int) -> bool:
    named = sorted({i for a in facts for i in a.args})
    if size < len(named):
        raise InvalidInput("the domain must hold every individual")
    elem = {ind: k for k, ind in enumerate(named)}
    dom = range(size)
    preds = tbox.predicates | {a.predicate for a in facts}
    var: dict = {}

    def v(*key) -> int:
        got = var.get(key)
        if got is None:
            got = var[key] = len(var) + 1
        return got

    def r(role: RoleExpr, x: int, y: int) -> int:
        return v("R", role.base, y, x) if role.inverted else v("R", role.base, x, y)

    clauses: list = []
    roles = {p.name for p in preds if p.arity == 2}
    for name in roles:
        for inv in (False, True):
            role = RoleExpr(name, inv)
            for x in dom:
                ex = v("E", name, inv, x)
                succs = [r(role, x, y) for y in dom]
                clauses.append([-ex] + succs)
                clauses += [[ex, -s] for s in succs]

    def b(basic, x: int) -> int:
        if isinstance(basic, AtomicConcept):
            return v("C", basic.name, x)
        return v("E", basic.role.base, basic.role.inverted, x)

    for ax in tbox:
        if isinstance(ax, ConceptInclusion):
            clauses += [[-b(ax.lhs, x), b(ax.rhs, x)] for x in dom]
        elif isinstance(ax, ConceptDisjointness):
            clauses += [sorted({-b(ax.lhs, x), -b(ax.rhs, x)}) for x in dom]
        elif isinstance(ax, RoleInclusion):
            clauses += [[-r(ax.lhs, x, y), r(ax.rhs, x, y)] for x in dom for y in dom]
        elif isinstance(ax, RoleDisjointness):
            clauses += [sorted({-r(ax.lhs, x, y), -r(ax.rhs, x, y)}) for x in dom for y in dom]
        elif isinstance(ax, Functionality):
            clauses += [[-r(ax.role, x, y1), -r(ax.role, x, y2)]
                        for x in dom for y1 in dom for y2 in dom if y1 < y2]
    for a in facts:
        if a.predicate.arity == 1:
            clauses.append([v("C", a.predicate.name, elem[a.args[0]])])
        else:
            clauses.append([v("R", a.predicate.name, elem[a.args[0]], elem[a.args[1]])])
    with Minisat22(bootstrap_with=clauses) as solver:
        return solver.solve()


def bounded_model_consistency(tbox: TBox, abox: "ABox | Iterable[Assertion]", max_domain: int,
                              una: bool = True) -> bool:
    """Whether a model with at most ``max_domain`` elements exists.

    Without the UNA, every way of identifying individuals is tried.
    """
    facts = list(abox)
    if una:
        return _sat_model_exists(tbox, facts, max_domain)
    named = sorted({i for a in facts for i in a.args})
    for part in _partitions(named):
        rep = {m: min(block) for block in part for m in block}
        merged = [Assertion(a.predicate, tuple(rep[i] for i in a.args)) for a in facts]
        if _sat_model_exists(tbox, merged, max_domain):
            return True
    return False
