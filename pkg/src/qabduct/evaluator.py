"""Query evaluation over an ABox read as a finite database, and certain answers."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ArityMismatch
from .model import ABox, Assertion, Atom, CQ, UCQ, Individual, Variable, as_ucq


class _Inconsistent:
    """Certain answers of an inconsistent ontology (every tuple, vacuously)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INCONSISTENT"

    def __bool__(self) -> bool:
        return False


INCONSISTENT = _Inconsistent()


@dataclass(frozen=True, eq=False)
class FiniteInterpretation:
    domain: frozenset
    concept_ext: dict
    role_ext: dict
    _index: dict = field(default_factory=dict, repr=False)

    def facts(self, name: str, arity: int) -> frozenset:
        ext = self.concept_ext if arity == 1 else self.role_ext
        return ext.get(name, frozenset())

    def lookup(self, name: str, arity: int, bound: tuple) -> Sequence[tuple]:
        """Facts of ``name`` agreeing with ``bound`` (``None`` marks a free position)."""
        key = (name, arity, tuple(i for i, b in enumerate(bound) if b is not None))
        positions = key[2]
        idx = self._index.get(key)
        if idx is None:
            idx = defaultdict(list)
            for tup in self.facts(name, arity):
                idx[tuple(tup[i] for i in positions)].append(tup)
            self._index[key] = idx
        return idx.get(tuple(bound[i] for i in positions), ())


def db_of(abox: "ABox | Iterable[Assertion]") -> FiniteInterpretation:
    concepts: dict = defaultdict(set)
    roles: dict = defaultdict(set)
    domain = set()
    for a in abox:
        domain.update(a.args)
        if a.predicate.arity == 1:
            concepts[a.predicate.name].add(a.args)
        else:
            roles[a.predicate.name].add(a.args)
    return FiniteInterpretation(frozenset(domain),
                                {k: frozenset(v) for k, v in concepts.items()},
                                {k: frozenset(v) for k, v in roles.items()})


def _resolve(term, binding: dict):
    return term if isinstance(term, Individual) else binding.get(term)


def matches(atoms: Sequence[Atom], db: FiniteInterpretation, binding: dict | None = None) -> Iterator[dict]:
    """All extensions of ``binding`` mapping every atom into ``db``.

    Backtracking; at each step the atom with the fewest candidate facts is matched next.
    """
    binding = dict(binding or {})
    remaining = list(atoms)

    def candidates(atom: Atom):
        bound = tuple(_resolve(t, binding) for t in atom.args)
        return db.lookup(atom.predicate.name, atom.predicate.arity, bound)

    def search() -> Iterator[dict]:
        if not remaining:
            yield dict(binding)
            return
        best_i, best = 0, None
        for i, atom in enumerate(remaining):
            c = candidates(atom)
            if best is None or len(c) < len(best):
                best_i, best = i, c
                if not c:
                    return
        atom = remaining.pop(best_i)
        for fact in best:
            added = []
            ok = True
            for t, v in zip(atom.args, fact):
                if isinstance(t, Individual):
                    continue
                cur = binding.get(t)
                if cur is None:
                    binding[t] = v
                    added.append(t)
                elif cur != v:
                    ok = False
                    break
            if ok:
                yield from search()
            for t in added:
                del binding[t]
        remaining.insert(best_i, atom)

    return search()


def _head_binding(cq: CQ, tup: Sequence[Individual]) -> dict | None:
    binding: dict = {}
    for t, c in zip(cq.head, tup):
        if isinstance(t, Individual):
            if t != c:
                return None
        elif binding.setdefault(t, c) != c:
            return None
    return binding


def evaluate(query: "CQ | UCQ", db: FiniteInterpretation) -> set[tuple]:
    answers: set = set()
    for cq in as_ucq(query):
        for m in matches(cq.atoms, db):
            answers.add(tuple(_resolve(t, m) for t in cq.head))
    return answers


def has_answer(query: "CQ | UCQ", db: FiniteInterpretation, tup: Sequence[Individual]) -> bool:
    """Whether ``tup`` is an answer, without computing the whole answer set."""
    ucq = as_ucq(query)
    if len(tup) != ucq.arity:
        raise ArityMismatch(f"tuple of length {len(tup)} for a query of arity {ucq.arity}")
    for cq in ucq:
        start = _head_binding(cq, tup)
        if start is not None and next(matches(cq.atoms, db, start), None) is not None:
            return True
    return False


def certain_answers(query: "CQ | UCQ", tbox, abox: "ABox | Iterable[Assertion]"):
    from .reasoner import is_consistent_una
    from .rewriter import perfect_reformulation

    abox = abox if isinstance(abox, ABox) else ABox(abox)
    if not is_consistent_una(tbox, abox):
        return INCONSISTENT
    return evaluate(perfect_reformulation(as_ucq(query), tbox).ucq, db_of(abox))


def is_certain(query: "CQ | UCQ", tbox, abox: "ABox | Iterable[Assertion]", tup: Sequence[Individual]) -> bool:
    from .reasoner import is_consistent_una
    from .rewriter import perfect_reformulation

    ucq = as_ucq(query)
    tup = tuple(tup)
    if len(tup) != ucq.arity:
        raise ArityMismatch(f"tuple of length {len(tup)} for a query of arity {ucq.arity}")
    abox = abox if isinstance(abox, ABox) else ABox(abox)
    if not is_consistent_una(tbox, abox):
        return True
    return has_answer(perfect_reformulation(ucq, tbox).ucq, db_of(abox), tup)
