"""Consistency checking for DL-Lite_A knowledge bases, with and without the UNA."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidTBox
from .model import (
    ABox, Assertion, AtomicConcept, BasicConcept, ConceptDisjointness, ConceptInclusion, Exists,
    Functionality, Individual, RoleDisjointness, RoleExpr, RoleInclusion, TBox, basic_key,
    validate_dllite,
)


def _require_valid(tbox: TBox) -> None:
    report = validate_dllite(tbox)
    if not report.valid:
        raise InvalidTBox(f"functional roles specialized: {report.violations}")


def _transitive(edges: dict) -> dict:
    """Reflexive-transitive closure of a successor map."""
    out = {}
    for start in list(edges):
        seen = {start}
        stack = [start]
        while stack:
            for nxt in edges.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        out[start] = frozenset(seen)
    return out


@dataclass(frozen=True)
class NegativeClosure:
    """Disjointness axioms closed under the positive inclusions, plus functionality axioms.

    ``concept_sup`` and ``role_sup`` are the reflexive-transitive closures of the
    positive inclusions (role inclusions also induce inclusions between the
    corresponding existential concepts).
    """

    disjointnesses: frozenset
    functionals: frozenset
    concept_sup: dict
    role_sup: dict
    concept_disjoint: dict
    role_disjoint: dict

    def __hash__(self) -> int:
        return hash((self.disjointnesses, self.functionals))

    def sup(self, b: BasicConcept) -> frozenset:
        return self.concept_sup.get(b, frozenset((b,)))

    def rsup(self, r: RoleExpr) -> frozenset:
        return self.role_sup.get(r, frozenset((r,)))

    @property
    def trivial(self) -> bool:
        return not self.disjointnesses and not self.functionals


@lru_cache(maxsize=512)
def negative_closure(tbox: TBox) -> NegativeClosure:
    _require_valid(tbox)
    role_edges: dict = defaultdict(set)
    concept_edges: dict = defaultdict(set)
    for ax in tbox:
        if isinstance(ax, RoleInclusion):
            for lhs, rhs in ((ax.lhs, ax.rhs), (ax.lhs.inverse(), ax.rhs.inverse())):
                role_edges[lhs].add(rhs)
                role_edges[rhs]
                concept_edges[Exists(lhs)].add(Exists(rhs))
                concept_edges[Exists(rhs)]
        elif isinstance(ax, ConceptInclusion):
            concept_edges[ax.lhs].add(ax.rhs)
            concept_edges[ax.rhs]
    role_sup = _transitive(role_edges)
    concept_sup = _transitive(concept_edges)

    def csub(b):  # everything below b, including b
        return {x for x, ups in concept_sup.items() if b in ups} | {b}

    def rsub(r):
        return {x for x, ups in role_sup.items() if r in ups} | {r}

    cdis: set = set()
    rdis: set = set()
    for ax in tbox:
        if isinstance(ax, ConceptDisjointness):
            cdis.add(frozenset((ax.lhs, ax.rhs)))
        elif isinstance(ax, RoleDisjointness):
            rdis.add(frozenset((ax.lhs, ax.rhs)))
            rdis.add(frozenset((ax.lhs.inverse(), ax.rhs.inverse())))

    changed = True
    while changed:
        changed = False
        # propagate downwards along the positive inclusions (both sides, by symmetry)
        for pair in list(cdis):
            x, y = (tuple(pair) * 2)[:2]
            for a in csub(x):
                for b in csub(y):
                    new = frozenset((a, b))
                    if new not in cdis:
                        cdis.add(new)
                        changed = True
        for pair in list(rdis):
            x, y = (tuple(pair) * 2)[:2]
            for a in rsub(x):
                for b in rsub(y):
                    for new in (frozenset((a, b)), frozenset((a.inverse(), b.inverse()))):
                        if new not in rdis:
                            rdis.add(new)
                            changed = True
        # an empty role empties its domain and range, and vice versa
        empty_roles = {next(iter(p)) for p in rdis if len(p) == 1}
        empty_roles |= {next(iter(p)).role for p in cdis
                        if len(p) == 1 and isinstance(next(iter(p)), Exists)}
        for r in list(empty_roles):
            for rr in (r, r.inverse()):
                for new_c in (frozenset((Exists(rr),)),):
                    if new_c not in cdis:
                        cdis.add(new_c)
                        changed = True
                if frozenset((rr,)) not in rdis:
                    rdis.add(frozenset((rr,)))
                    changed = True

    concept_disjoint: dict = defaultdict(set)
    for pair in cdis:
        x, y = (tuple(pair) * 2)[:2]
        concept_disjoint[x].add(y)
        concept_disjoint[y].add(x)
    role_disjoint: dict = defaultdict(set)
    for pair in rdis:
        x, y = (tuple(pair) * 2)[:2]
        role_disjoint[x].add(y)
        role_disjoint[y].add(x)

    axioms = set()
    for pair in cdis:
        x, y = sorted((tuple(pair) * 2)[:2], key=basic_key)
        axioms.add(ConceptDisjointness(x, y))
    for pair in rdis:
        x, y = sorted((tuple(pair) * 2)[:2])
        axioms.add(RoleDisjointness(x, y))
    return NegativeClosure(
        disjointnesses=frozenset(axioms),
        functionals=frozenset(a for a in tbox.axioms if isinstance(a, Functionality)),
        concept_sup=concept_sup,
        role_sup=role_sup,
        concept_disjoint={k: frozenset(v) for k, v in concept_disjoint.items()},
        role_disjoint={k: frozenset(v) for k, v in role_disjoint.items()},
    )


# --------------------------------------------------------------------------- clash detection


def _role_facts(assertions: Iterable[Assertion]) -> dict:
    """Map each ordered pair (a, b) to the role expressions asserted from a to b."""
    pairs: dict = defaultdict(set)
    for a in assertions:
        if a.predicate.arity == 2:
            s, o = a.args
            pairs[(s, o)].add(RoleExpr(a.predicate.name))
            pairs[(o, s)].add(RoleExpr(a.predicate.name, True))
    return pairs


def find_clash(tbox: TBox, assertions: Iterable[Assertion]) -> str | None:
    """Describe one violated axiom under the UNA, or return None.

    The closed disjointness sets already hold for every sub-concept and sub-role,
    so asserted facts only need to be compared pairwise.
    """
    closure = negative_closure(tbox)
    if closure.trivial:
        return None
    if isinstance(assertions, ABox):
        assertions = assertions.assertions
    elif not isinstance(assertions, (list, tuple, frozenset, set)):
        assertions = list(assertions)
    pairs = _role_facts(assertions)
    rdis = closure.role_disjoint
    if rdis:
        for (s, o), roles in pairs.items():
            for r in roles:
                bad = rdis.get(r)
                if bad and not bad.isdisjoint(roles):
                    return f"{r}({s},{o}) clashes with {sorted(map(str, bad & roles))[0]}({s},{o})"

    cdis = closure.concept_disjoint
    if cdis:
        types: dict = defaultdict(set)
        for a in assertions:
            if a.predicate.arity == 1:
                types[a.args[0]].add(AtomicConcept(a.predicate.name))
        for (s, _), roles in pairs.items():
            for r in roles:
                types[s].add(Exists(r))
        for ind, asserted in types.items():
            for b in asserted:
                bad = cdis.get(b)
                if bad and not bad.isdisjoint(asserted):
                    return f"{ind} is both {b} and {sorted(map(str, bad & asserted))[0]}"

    for f in closure.functionals:
        succ: dict = defaultdict(set)
        for (s, o), roles in pairs.items():
            if any(f.role in closure.rsup(r) for r in roles):
                succ[s].add(o)
        for s, objs in succ.items():
            if len(objs) > 1:
                return f"{s} has several {f.role}-successors {sorted(map(str, objs))}"
    return None


def is_consistent_una(tbox: TBox, abox: "ABox | Iterable[Assertion]") -> bool:
    return find_clash(tbox, abox) is None


class _UnionFind:
    """Union-find whose representative is the lexicographically least member."""

    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        lo, hi = sorted((ra, rb))
        self.parent[hi] = lo
        return True


def quotient_nouna(tbox: TBox, abox: "ABox | Iterable[Assertion]") -> ABox:
    """Merge individuals forced equal by functionality axioms."""
    closure = negative_closure(tbox)
    facts = list(abox)
    uf = _UnionFind()
    for a in facts:
        for i in a.args:
            uf.find(i)
    functional = [f.role for f in closure.functionals]
    changed = True
    while changed:
        changed = False
        for r in functional:
            first: dict = {}
            for a in facts:
                if a.predicate.arity != 2 or a.predicate.name != r.base:
                    continue
                s, o = a.args if not r.inverted else a.args[::-1]
                s, o = uf.find(s), uf.find(o)
                if s in first and uf.find(first[s]) != o:
                    changed |= uf.union(first[s], o)
                first.setdefault(s, o)
    return ABox(Assertion(a.predicate, tuple(uf.find(i) for i in a.args)) for a in facts)


def is_consistent_nouna(tbox: TBox, abox: "ABox | Iterable[Assertion]") -> bool:
    return is_consistent_una(tbox, quotient_nouna(tbox, abox))


def entails_assertion(tbox: TBox, abox: "ABox | Iterable[Assertion]", alpha: Assertion) -> bool:
    from .evaluator import is_certain
    from .model import CQ, Atom, Variable

    _require_valid(tbox)
    abox = abox if isinstance(abox, ABox) else ABox(abox)
    xs = tuple(Variable(f"x{i}") for i in range(len(alpha.args)))
    return is_certain(CQ(xs, [Atom(alpha.predicate, xs)]), tbox, abox, alpha.args)


def satisfiable_predicate(tbox: TBox, pred) -> bool:
    """Whether an assertion over ``pred`` on fresh individuals is consistent with ``tbox``."""
    args = tuple(Individual(f"__qx_s{i}") for i in range(pred.arity))
    return is_consistent_una(tbox, [Assertion(pred, args)])
