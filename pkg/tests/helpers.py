"""Verdicts derived from brute-force explanation sets, with no help from the engine."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

from qabduct.canon import abox_key
from qabduct.formats import parse_abox, parse_query, parse_tbox
from qabduct.model import QAP, ABox, Assertion, Individual, Predicate, anonymous, concept, max_atoms, role
from qabduct.reasoner import is_consistent_una
from qabduct.testkit import Profile, brute_force_explanations, is_explanation, random_qap

DATA = Path(__file__).parent / "data"


def university(sigma=("enroll", "teach"), tup=("Carlo",)) -> QAP:
    abox = parse_abox((DATA / "university.abox").read_text())
    query = parse_query((DATA / "university.query").read_text())
    roles = {p.name for p in abox.predicates | query.predicates if p.arity == 2}
    tbox = parse_tbox((DATA / "university.tbox").read_text(), roles)
    known = {p.name: p for p in tbox.predicates | abox.predicates | query.predicates}
    return QAP(tbox, abox, query, tuple(Individual(t) for t in tup), {known[s] for s in sigma})


# --------------------------------------------------------------------------- corpus

PROFILE = Profile()
INSTANCE_PROFILE = Profile(instance_query=True)


@lru_cache(maxsize=None)
def corpus(seed: int, instance: bool = False):
    p = random_qap(seed, INSTANCE_PROFILE if instance else PROFILE)
    minimal = brute_force_explanations(p, minimal_only=True)
    return p, frozenset(minimal)


def keys(explanations) -> set:
    return {abox_key(e.assertions if hasattr(e, "assertions") else e) for e in explanations}


def card_minimal(minimal) -> set:
    if not minimal:
        return set()
    least = min(len(e) for e in minimal)
    return {e for e in minimal if len(e) == least}


# --------------------------------------------------------------------------- occurrence up to renaming


def occurs(p: QAP, alpha: Assertion, e) -> bool:
    """``alpha`` belongs to some renaming of ``e`` that fixes the problem's individuals."""
    named = p.individuals
    for beta in e:
        if beta.predicate != alpha.predicate:
            continue
        pairs = list(zip(alpha.args, beta.args))
        if any((a in named or b in named) and a != b for a, b in pairs):
            continue
        free = [(a, b) for a, b in pairs if a not in named and b not in named]
        if len({a for a, _ in free}) == len({b for _, b in free}) == len(set(free)):
            return True
    return False


def forced(p: QAP, alpha: Assertion, e) -> bool:
    return all(i in p.individuals for i in alpha.args) and alpha in set(e)


def _renamings(e, targets: list):
    """Injective maps sending some anonymous individuals of ``e`` onto ``targets``."""
    anon = sorted({i for a in e for i in a.args if i.anonymous})
    yield {}
    for k in range(1, min(len(anon), len(targets)) + 1):
        for src in combinations(anon, k):
            for dst in permutations(targets, k):
                yield dict(zip(src, dst))


def _rename(e, m: dict) -> set:
    return {Assertion(a.predicate, tuple(m.get(i, i) for i in a.args)) for a in e}


# --------------------------------------------------------------------------- verdicts


def oracle_rel(p: QAP, minimal, alpha: Assertion, order: str) -> bool:
    if alpha.predicate not in p.sigma or not minimal:
        return False
    if order == "subset":
        return any(occurs(p, alpha, e) for e in minimal)
    if order == "card":
        return any(occurs(p, alpha, e) for e in card_minimal(minimal))
    # some explanation contains alpha iff a minimal one can be extended by it
    outside = sorted({i for i in alpha.args if i not in p.individuals})
    fresh_alpha = _rename([alpha], {i: Individual(f"_:z{k}") for k, i in enumerate(outside)}).pop()
    targets = [Individual(f"_:z{k}") for k in range(len(outside))]
    for e in minimal:
        for m in _renamings(e, targets):
            if is_consistent_una(p.tbox, p.abox | _rename(e, m) | {fresh_alpha}):
                return True
    return False


def oracle_nec(p: QAP, minimal, alpha: Assertion, order: str) -> bool:
    pool = card_minimal(minimal) if order == "card" else minimal
    return all(forced(p, alpha, e) for e in pool)


def oracle_rec(p: QAP, minimal, e, order: str) -> bool:
    e = list(e)
    if not is_explanation(p, e):
        return False
    if order == "subset":
        return not any(is_explanation(p, sub) for n in range(len(e)) for sub in combinations(e, n))
    if order == "card":
        return all(len(m) >= len(e) for m in minimal)
    return True


# --------------------------------------------------------------------------- probes


def vocabulary(p: QAP) -> list[Predicate]:
    return sorted(p.sigma | p.tbox.predicates | p.query.predicates | {concept("A"), role("P")})


def probe_assertions(p: QAP, minimal, rng: random.Random, extra: int = 3) -> list[Assertion]:
    """Assertions from the minimal explanations plus a few random ones."""
    out = sorted({a for e in minimal for a in e})
    inds = sorted(p.individuals | {Individual("a"), Individual("b")}) + [anonymous(1), Individual("zz")]
    preds = vocabulary(p)
    for _ in range(extra):
        pred = rng.choice(preds)
        out.append(Assertion(pred, tuple(rng.choice(inds) for _ in range(pred.arity))))
    return list(dict.fromkeys(out))


def probe_aboxes(p: QAP, minimal, rng: random.Random) -> list[ABox]:
    out = [ABox(e) for e in minimal]
    inds = sorted(p.individuals | {Individual("a")}) + [anonymous(1)]
    preds = sorted(p.sigma)
    for e in list(minimal)[:3]:
        pred = rng.choice(preds)
        out.append(ABox(set(e) | {Assertion(pred, tuple(rng.choice(inds) for _ in range(pred.arity)))}))
        if len(e) > 1:
            out.append(ABox(list(e)[1:]))
    for _ in range(2):
        size = rng.randint(0, 2)
        facts = []
        for _ in range(size):
            pred = rng.choice(preds)
            facts.append(Assertion(pred, tuple(rng.choice(inds) for _ in range(pred.arity))))
        out.append(ABox(facts))
    return out
