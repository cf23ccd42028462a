"""Explanations for negative query answers: existence, recognition, relevance, necessity.

Every ⊆-minimal explanation is, up to renaming of anonymous individuals, the
part of an instantiation of some rewritten disjunct that is missing from the
ABox.  The engine searches those instantiations with a backtracking matcher:
atoms over non-abducible predicates must be matched in the ABox, abducible atoms
may be matched or added, and an optional budget caps the number of additions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .canon import abox_key, canonical_renaming
from .errors import ArityMismatch, FunctionalityConflict, NotAnExplanation, RestrictedSignature
from .evaluator import FiniteInterpretation, db_of, has_answer, matches
from .model import (
    ABox, Assertion, Atom, CQ, ConceptDisjointness, AtomicConcept, Individual, PreferenceOrder, QAP,
    RoleDisjointness, RoleExpr, UCQ, Variable, anonymous, is_sigma_abox, is_unrestricted, max_atoms,
)
from .reasoner import entails_assertion, is_consistent_una, negative_closure, satisfiable_predicate
from .rewriter import perfect_reformulation


@dataclass(frozen=True)
class Explanation:
    """A Σ-ABox that makes the tuple certain; provenance records where it came from."""

    assertions: ABox
    provenance: Optional[tuple] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.assertions)

    def __iter__(self):
        return iter(self.assertions)

    def __str__(self) -> str:
        return str(self.assertions)


def _order(order) -> PreferenceOrder:
    return order if isinstance(order, PreferenceOrder) else PreferenceOrder(order)


# --------------------------------------------------------------------------- instantiations


def _anon_sequence(avoid: Iterable[Individual]) -> Iterator[Individual]:
    used = {i.name for i in avoid}
    n = 0
    while True:
        n += 1
        cand = anonymous(n)
        if cand.name not in used:
            yield cand


def _head_binding(cq: CQ, tup: Sequence[Individual]) -> Optional[dict]:
    if len(tup) != cq.arity:
        raise ArityMismatch(f"tuple of length {len(tup)} for a query of arity {cq.arity}")
    binding: dict = {}
    for t, c in zip(cq.head, tup):
        if isinstance(t, Individual):
            if t != c:
                return None
        elif binding.setdefault(t, c) != c:
            return None
    return binding


def _ground(atoms: Iterable[Atom], binding: dict) -> frozenset[Assertion]:
    return frozenset(Assertion(a.predicate, tuple(t if isinstance(t, Individual) else binding[t]
                                                  for t in a.args)) for a in atoms)


def instantiations(cq: CQ, tup: Sequence[Individual], pool: Iterable[Individual]) -> Iterator[tuple[dict, ABox]]:
    """Every instantiation of ``cq`` for ``tup``, one per anonymous-renaming class.

    Quantified variables take values in ``pool`` (lexicographic order) and then
    in fresh anonymous individuals introduced in order of first use.
    """
    start = _head_binding(cq, tuple(tup))
    if start is None:
        return
    pool = sorted(set(pool))
    fresh = list(_take(_anon_sequence(pool), len(cq.quantified)))
    qvars = cq.quantified

    def assign(i: int, binding: dict, used: int):
        if i == len(qvars):
            yield dict(binding), ABox(_ground(cq.body, binding))
            return
        for value in pool + fresh[:used + 1]:
            binding[qvars[i]] = value
            yield from assign(i + 1, binding, max(used, fresh.index(value) + 1) if value in fresh else used)
        del binding[qvars[i]]

    yield from assign(0, dict(start), 0)


def _take(it: Iterator, n: int) -> list:
    return [next(it) for _ in range(n)]


def direct_instantiation(cq: CQ, tup: Sequence[Individual], context: Iterable[Individual] = ()) -> ABox:
    """Map each quantified variable to its own fresh anonymous individual."""
    binding = _head_binding(cq, tuple(tup))
    if binding is None:
        raise ArityMismatch("tuple incompatible with the query head")
    avoid = set(context) | set(tup) | cq.individuals
    for v, ind in zip(cq.quantified, _anon_sequence(avoid)):
        binding[v] = ind
    return ABox(_ground(cq.body, binding))


# --------------------------------------------------------------------------- the engine


def _frozen_db(atoms: Iterable[Atom]) -> FiniteInterpretation:
    concepts: dict = {}
    roles: dict = {}
    for a in atoms:
        ext = concepts if a.predicate.arity == 1 else roles
        ext.setdefault(a.predicate.name, set()).add(a.args)
    return FiniteInterpretation(frozenset(), {k: frozenset(v) for k, v in concepts.items()},
                                {k: frozenset(v) for k, v in roles.items()})


def _contained_in(general: CQ, specific: CQ) -> bool:
    """Whether ``general`` maps homomorphically onto ``specific`` (so ``specific`` ⊆ ``general``)."""
    start = _head_binding(general, specific.head)
    if start is None:
        return False
    return next(matches(general.atoms, _frozen_db(specific.body), start), None) is not None


def _prune(disjuncts: Sequence[CQ]) -> list[tuple[int, CQ]]:
    """Drop disjuncts contained in another one; keeps the UCQ equivalent."""
    kept: list[tuple[int, CQ]] = []
    for i, d in enumerate(disjuncts):
        redundant = False
        for j, other in enumerate(disjuncts):
            if i == j or len(other.body) > len(d.body) and not _contained_in(other, d):
                continue
            if _contained_in(other, d) and (not _contained_in(d, other) or j < i):
                redundant = True
                break
        if not redundant:
            kept.append((i, d))
    return kept


class _Engine:
    """Per-problem state: reformulation, consistency cache and candidate cache."""

    def __init__(self, p: QAP) -> None:
        self.p = p
        self.closure = negative_closure(p.tbox)
        self.reformulation = perfect_reformulation(p.query, p.tbox)
        self.disjuncts = _prune(self.reformulation.disjuncts)
        self.ucq = UCQ(d for _, d in self.disjuncts)
        self.abox = p.abox.assertions
        self.db = db_of(p.abox)
        self.base_consistent = is_consistent_una(p.tbox, p.abox)
        self.named = p.individuals
        self.pool = sorted(self.named)
        self._consistent: dict = {frozenset(): self.base_consistent}
        self._explains: dict = {}
        self._candidates: dict = {}
        self._within: dict = {}

    # -- explanation check ------------------------------------------------------------------------

    def consistent_with(self, extra: frozenset) -> bool:
        if not self.base_consistent:
            return False
        if self.closure.trivial:
            return True
        got = self._consistent.get(extra)
        if got is None:
            got = self._consistent[extra] = is_consistent_una(self.p.tbox, self.abox | extra)
        return got

    def explains(self, e: Iterable[Assertion]) -> bool:
        e = frozenset(e)
        got = self._explains.get(e)
        if got is None:
            got = (is_sigma_abox(e, self.p.sigma) and self.consistent_with(e - self.abox)
                   and has_answer(self.ucq, db_of(self.abox | e), self.p.tuple))
            self._explains[e] = got
        return got

    # -- candidate search -------------------------------------------------------------------

    def search(self, cq: CQ, max_new: Optional[int]) -> Iterator[tuple[dict, frozenset]]:
        """Instantiations of ``cq`` whose missing part is a consistent Σ-ABox within budget."""
        start = _head_binding(cq, self.p.tuple)
        if start is None:
            return
        sigma = self.p.sigma
        binding = dict(start)
        new: dict = {}
        remaining = list(cq.atoms)
        fresh = list(_take(_anon_sequence(self.pool), len(cq.quantified)))
        state = {"used": 0}
        db = self.db
        check = not self.closure.trivial

        def resolve(t):
            return t if isinstance(t, Individual) else binding.get(t)

        def options(atom: Atom) -> tuple[int, list]:
            bound = tuple(resolve(t) for t in atom.args)
            free = list(dict.fromkeys(t for t, b in zip(atom.args, bound) if b is None))
            can_add = atom.predicate in sigma and (max_new is None or len(new) < max_new)
            if not can_add:
                hits = list(db.lookup(atom.predicate.name, atom.predicate.arity, bound))
                hits += [a.args for a in new if a.predicate == atom.predicate
                         and all(b is None or b == v for b, v in zip(bound, a.args))]
                return len(hits), [("fact", h) for h in hits]
            width = len(self.pool) + state["used"] + 1
            return width ** len(free), [("free", free)]

        def bind_fact(atom: Atom, fact: tuple) -> Optional[list]:
            added = []
            for t, v in zip(atom.args, fact):
                if isinstance(t, Individual):
                    continue
                cur = binding.get(t)
                if cur is None:
                    binding[t] = v
                    added.append(t)
                elif cur != v:
                    for x in added:
                        del binding[x]
                    return None
            return added

        def close_atom(atom: Atom) -> Iterator[None]:
            # all variables of ``atom`` are bound here
            fact = Assertion(atom.predicate, tuple(resolve(t) for t in atom.args))
            if fact in self.abox:
                yield
                return
            if fact in new:
                new[fact] += 1
                yield
                new[fact] -= 1
                return
            if atom.predicate not in sigma or (max_new is not None and len(new) >= max_new):
                return
            new[fact] = 1
            if not check or self.consistent_with(frozenset(new)):
                yield
            del new[fact]

        def assign_free(atom: Atom, free: list, k: int) -> Iterator[None]:
            if k == len(free):
                yield from close_atom(atom)
                return
            var = free[k]
            used = state["used"]
            for value in self.pool + fresh[:used + 1]:
                binding[var] = value
                if value in fresh[used:used + 1]:
                    state["used"] = used + 1
                yield from assign_free(atom, free, k + 1)
                state["used"] = used
            del binding[var]

        def step() -> Iterator[None]:
            if not remaining:
                yield
                return
            best_i, best = 0, None
            for i, atom in enumerate(remaining):
                size, opts = options(atom)
                if best is None or size < best[0]:
                    best_i, best = i, (size, opts)
                    if size == 0:
                        return
            atom = remaining.pop(best_i)
            for kind, payload in best[1]:
                if kind == "fact":
                    added = bind_fact(atom, payload)
                    if added is None:
                        continue
                    for _ in close_atom(atom):
                        yield from step()
                    for x in added:
                        del binding[x]
                else:
                    for _ in assign_free(atom, payload, 0):
                        yield from step()
            remaining.insert(best_i, atom)

        for _ in step():
            yield dict(binding), frozenset(new)

    def _explanation(self, index: int, binding: dict, extra: frozenset) -> Explanation:
        rename = canonical_renaming(extra)
        assertions = ABox(Assertion(a.predicate, tuple(rename.get(i, i) for i in a.args)) for a in extra)
        xi = tuple(sorted((v.name, rename.get(ind, ind).name) for v, ind in binding.items()))
        return Explanation(assertions, (index, xi))

    def first(self) -> Optional[Explanation]:
        if not self.base_consistent:
            return None
        # a certain tuple must report the empty explanation, so look for it first
        for budget in (0, None):
            for index, cq in self.disjuncts:
                for binding, extra in self.search(cq, budget):
                    return self._explanation(index, binding, extra)
        return None

    def candidates(self, max_new: Optional[int] = None) -> list[Explanation]:
        """All distinct (up to renaming) consistent candidates with at most ``max_new`` additions."""
        if max_new is not None and None in self._candidates:
            return [e for e in self._candidates[None] if len(e) <= max_new]
        got = self._candidates.get(max_new)
        if got is None:
            got, seen = [], set()
            if self.base_consistent:
                for index, cq in self.disjuncts:
                    for binding, extra in self.search(cq, max_new):
                        key = abox_key(extra)
                        if key not in seen:
                            seen.add(key)
                            got.append(self._explanation(index, binding, extra))
            self._candidates[max_new] = got
        return got

    def exists_within(self, k: int) -> bool:
        """Whether some explanation has at most ``k`` assertions."""
        if k < 0 or not self.base_consistent:
            return False
        got = self._within.get(k)
        if got is None:
            if None in self._candidates or k in self._candidates:
                got = bool(self.candidates(k))
            else:
                got = any(True for _, cq in self.disjuncts for _ in self.search(cq, k))
            self._within[k] = got
        return got

    def has_proper_subexplanation(self, e: frozenset) -> bool:
        items = sorted(e)
        return any(self.explains(sub) for n in range(len(items)) for sub in combinations(items, n))

    def subset_minimal(self) -> list[Explanation]:
        got = self._candidates.get("minimal")
        if got is None:
            got, seen = [], set()
            for cand in sorted(self.candidates(None), key=len):
                key = abox_key(cand.assertions)
                if key in seen or self.has_proper_subexplanation(cand.assertions.assertions):
                    continue
                seen.add(key)
                got.append(cand)
            self._candidates["minimal"] = got
        return got

    # -- assertion bookkeeping --------------------------------------------------------------

    def occurs(self, alpha: Assertion, e: Iterable[Assertion]) -> bool:
        """Whether ``alpha`` belongs to ``e`` after renaming individuals outside the problem."""
        for beta in e:
            if beta.predicate != alpha.predicate:
                continue
            fwd: dict = {}
            back: dict = {}
            ok = True
            for a, b in zip(alpha.args, beta.args):
                if a in self.named or b in self.named:
                    ok = a == b
                elif fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
                    ok = False
                if not ok:
                    break
            if ok:
                return True
        return False

    def forced(self, alpha: Assertion, e: Iterable[Assertion]) -> bool:
        """Whether every renaming of ``e`` contains ``alpha``."""
        return all(i in self.named for i in alpha.args) and alpha in set(e)

    def can_pad(self, e: frozenset, k: int, exclude: Optional[Assertion] = None) -> bool:
        """Whether ``k`` more assertions can be added to ``e`` keeping consistency."""
        if k <= 0:
            return k == 0
        if any(satisfiable_predicate(self.p.tbox, s) for s in self.p.sigma):
            return True
        spare = [a for a in self.abox if a.predicate in self.p.sigma and a not in e and a != exclude]
        return len(spare) >= k

    def rename_apart(self, e: frozenset, alpha: Assertion) -> frozenset:
        avoid = set(alpha.args) | self.named | {i for a in e for i in a.args}
        clash = {i for i in alpha.args if not i in self.named} & {i for a in e for i in a.args}
        if not clash:
            return e
        fresh = _anon_sequence(avoid)
        rename = {i: next(fresh) for i in sorted(clash)}
        return frozenset(Assertion(a.predicate, tuple(rename.get(i, i) for i in a.args)) for a in e)


@lru_cache(maxsize=64)
def _engine(p: QAP) -> _Engine:
    return _Engine(p)


# --------------------------------------------------------------------------- public operations


def exists_explanation(p: QAP) -> Optional[Explanation]:
    return _engine(p).first()


def has_explanation(p: QAP) -> bool:
    return exists_explanation(p) is not None


def _explains(p: QAP, e: Iterable[Assertion]) -> bool:
    return _engine(p).explains(frozenset(e))


def has_subexpl(p: QAP, e: "ABox | Iterable[Assertion]") -> bool:
    eng = _engine(p)
    e = frozenset(e)
    if not eng.explains(e):
        raise NotAnExplanation(f"{ABox(e)} is not an explanation")
    return eng.has_proper_subexplanation(e)


def no_smaller(p: QAP, n: int) -> bool:
    return not _engine(p).exists_within(n - 1)


def size_out(p: QAP, alpha: Assertion, n: int) -> bool:
    """Whether some explanation has exactly ``n`` assertions and avoids ``alpha``."""
    eng = _engine(p)
    if n < 0 or not eng.base_consistent:
        return False
    for cand in eng.candidates(n):
        e = cand.assertions.assertions
        if eng.forced(alpha, e):
            continue
        if eng.can_pad(e, n - len(e), exclude=alpha):
            return True
    return False


def size_in(p: QAP, alpha: Assertion, n: int) -> bool:
    """Whether some explanation has exactly ``n`` assertions and contains ``alpha``."""
    eng = _engine(p)
    if n < 1 or not eng.base_consistent or alpha.predicate not in p.sigma:
        return False
    for cand in eng.candidates(n):
        e = cand.assertions.assertions
        if eng.occurs(alpha, e):
            grown = e
        else:
            grown = eng.rename_apart(e, alpha) | {alpha}
            if not eng.consistent_with(grown - eng.abox):
                continue
        if len(grown) <= n and eng.can_pad(grown, n - len(grown)):
            return True
    return False


def recognize(p: QAP, e: "ABox | Iterable[Assertion]", order="none") -> bool:
    order = _order(order)
    eng = _engine(p)
    e = frozenset(e)
    if not eng.explains(e):
        return False
    if order is PreferenceOrder.CARD:
        return no_smaller(p, len(e))
    if order is PreferenceOrder.SUBSET:
        return not eng.has_proper_subexplanation(e)
    return True


def enumerate_minimal(p: QAP, order="subset") -> list[Explanation]:
    order = _order(order)
    if order is PreferenceOrder.NONE:
        raise ValueError("enumeration needs the subset or card order")
    found = _engine(p).subset_minimal()
    if order is PreferenceOrder.CARD and found:
        least = min(len(e) for e in found)
        found = [e for e in found if len(e) == least]
    return sorted(found, key=lambda e: (len(e), abox_key(e.assertions)))


def is_relevant(p: QAP, alpha: Assertion, order="none") -> bool:
    from .reductions import rel_to_exist

    order = _order(order)
    eng = _engine(p)
    if alpha.predicate not in p.sigma or not eng.base_consistent:
        return False
    if order is PreferenceOrder.NONE:
        return has_explanation(rel_to_exist(p, alpha))
    if order is PreferenceOrder.SUBSET:
        return any(eng.occurs(alpha, e) for e in eng.subset_minimal())
    for i in range(max_atoms(p.query) + 1):
        if not no_smaller(p, i):
            break
        if size_in(p, alpha, i):
            return True
    return False


def _necessary_by_enumeration(p: QAP, alpha: Assertion) -> bool:
    eng = _engine(p)
    return all(eng.forced(alpha, e.assertions) for e in eng.candidates(None))


def is_necessary(p: QAP, alpha: Assertion, order="none") -> bool:
    from .reductions import nec_to_nonexist

    order = _order(order)
    eng = _engine(p)
    if not eng.base_consistent:
        return True
    if order is PreferenceOrder.CARD:
        for i in range(max_atoms(p.query) + 1):
            if not no_smaller(p, i):
                break
            if size_out(p, alpha, i):
                return False
        return True
    if alpha.predicate not in p.sigma:
        return not has_explanation(p)
    try:
        return not has_explanation(nec_to_nonexist(p, alpha))
    except FunctionalityConflict:
        return _necessary_by_enumeration(p, alpha)


def isNEC(p: QAP, alpha: Assertion) -> bool:  # noqa: N802
    """Necessity under unrestricted signatures, via a guarded existence check, then single-fact ABoxes that entail it."""
    from .reductions import fresh_predicate, fresh_individuals, normalize_assertion

    if not is_unrestricted(p) or alpha.predicate not in p.sigma:
        raise RestrictedSignature("isNEC needs an unrestricted signature containing the assertion's predicate")
    alpha = normalize_assertion(p, alpha)
    phi = alpha.predicate
    blocker = fresh_predicate(p, phi.arity, "bar")
    if phi.arity == 1:
        disj = ConceptDisjointness(AtomicConcept(blocker.name), AtomicConcept(phi.name))
    else:
        disj = RoleDisjointness(RoleExpr(blocker.name), RoleExpr(phi.name))
    guarded = QAP(p.tbox.with_axioms(disj), p.abox | {Assertion(blocker, alpha.args)}, p.query, p.tuple, p.sigma)
    if has_explanation(guarded):
        return False
    (u,) = fresh_individuals(p, 1, "u", avoid=alpha.args)
    universe = sorted(p.individuals | set(alpha.args) | {u})
    singletons: list[frozenset] = [frozenset()]
    for pred in sorted(p.sigma):
        for args in _tuples(universe, pred.arity):
            fact = Assertion(pred, args)
            if fact != alpha:
                singletons.append(frozenset((fact,)))
    for extra in singletons:
        abox = p.abox | extra
        if entails_assertion(p.tbox, abox, alpha) and has_explanation(p.replace(abox=abox)):
            return False
    return True


def _tuples(universe: Sequence[Individual], arity: int) -> Iterator[tuple]:
    if arity == 1:
        for a in universe:
            yield (a,)
    else:
        for a in universe:
            for b in universe:
                yield (a, b)


def relevance_witness(p: QAP, alpha: Assertion, order="none") -> Optional[Explanation]:
    """An explanation (minimal for ``order``) in which ``alpha`` occurs, if any."""
    from .reductions import normalize_assertion, rel_to_exist

    order = _order(order)
    eng = _engine(p)
    if alpha.predicate not in p.sigma or not eng.base_consistent:
        return None
    if order is PreferenceOrder.NONE:
        fixed = normalize_assertion(p, alpha)
        found = exists_explanation(rel_to_exist(p, alpha))
        if found is None:
            return None
        back = {n: o for n, o in zip(fixed.args, alpha.args)}
        merged = {Assertion(a.predicate, tuple(back.get(i, i) for i in a.args)) for a in found.assertions}
        return Explanation(ABox(merged | {alpha}), ("relevance",))
    for e in enumerate_minimal(p, order):
        if eng.occurs(alpha, e.assertions):
            return e
    return None
