"""Problem transformers between existence, necessity, relevance and query non-emptiness.

Fresh symbols carry the reserved ``__qx_`` prefix, which the parsers reject, so
they cannot collide with user names.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import FunctionalityConflict, NotAbducible
from .model import (
    ABox, Assertion, Atom, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, FRESH_PREFIX,
    Functionality, Individual, Predicate, QAP, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ,
    as_ucq, validate_dllite,
)
from .errors import InvalidTBox
from .reasoner import satisfiable_predicate


def _used_names(p: QAP) -> set[str]:
    names = {x.name for x in p.sigma | p.tbox.predicates | p.abox.predicates | p.query.predicates}
    return names | {i.name for i in p.individuals}


def _fresh_names(taken: set[str], tag: str, n: int) -> list[str]:
    out, k = [], 0
    while len(out) < n:
        name = f"{FRESH_PREFIX}{tag}{k}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        k += 1
    return out


def fresh_predicate(p: QAP, arity: int, tag: str = "f") -> Predicate:
    return Predicate(_fresh_names(_used_names(p), tag, 1)[0], arity)


def fresh_individuals(p: QAP, n: int, tag: str = "d", avoid: Iterable[Individual] = ()) -> list[Individual]:
    taken = _used_names(p) | {i.name for i in avoid}
    return [Individual(x) for x in _fresh_names(taken, tag, n)]


def normalize_assertion(p: QAP, alpha: Assertion) -> Assertion:
    """Replace anonymous arguments by fresh named individuals (a QAP's ABox has none)."""
    if not any(i.anonymous for i in alpha.args):
        return alpha
    taken = _used_names(p) | {i.name for i in alpha.args}
    rename = {}
    for i in alpha.args:
        if i.anonymous and i not in rename:
            rename[i] = Individual(_fresh_names(taken, "x", 1)[0])
    return Assertion(alpha.predicate, tuple(rename.get(i, i) for i in alpha.args))


def _require_abducible(p: QAP, alpha: Assertion) -> None:
    if alpha.predicate not in p.sigma:
        raise NotAbducible(f"{alpha.predicate.name} is not in the explanation signature")


# --------------------------------------------------------------------------- existence and necessity


def nonexist_to_nec(p: QAP) -> tuple[QAP, Assertion]:
    """P has no explanation iff the returned assertion is necessary for the returned problem."""
    phi = fresh_predicate(p, 1, "phi")
    (d,) = fresh_individuals(p, 1, "d")
    return p.replace(sigma=p.sigma | {phi}), Assertion(phi, (d,))


def nec_to_nonexist(p: QAP, alpha: Assertion) -> QAP:
    """``alpha`` is necessary for P iff the returned problem has no explanation.

    The blocker is made disjoint from the renamed copy of the predicate, not from
    the predicate itself: explanations that avoid ``alpha`` yet entail it must
    survive, or an already entailed ``alpha`` would look necessary.
    """
    _require_abducible(p, alpha)
    alpha = normalize_assertion(p, alpha)
    phi = alpha.predicate
    if phi.arity == 2:
        for ax in p.tbox:
            if isinstance(ax, Functionality) and ax.role.base == phi.name:
                raise FunctionalityConflict(f"{phi.name} is functional, so it cannot get a sub-role")
    prime = fresh_predicate(p, phi.arity, "prime")
    bar = Predicate(_fresh_names(_used_names(p) | {prime.name}, "bar", 1)[0], phi.arity)
    if phi.arity == 1:
        extra = (ConceptInclusion(AtomicConcept(prime.name), AtomicConcept(phi.name)),
                 ConceptDisjointness(AtomicConcept(bar.name), AtomicConcept(prime.name)))
    else:
        extra = (RoleInclusion(RoleExpr(prime.name), RoleExpr(phi.name)),
                 RoleDisjointness(RoleExpr(bar.name), RoleExpr(prime.name)))
    return QAP(p.tbox.with_axioms(*extra), p.abox | {Assertion(bar, alpha.args)}, p.query, p.tuple,
               (p.sigma - {phi}) | {prime})


# --------------------------------------------------------------------------- relevance and existence


def rel_to_exist(p: QAP, alpha: Assertion) -> QAP:
    """``alpha`` is relevant for P iff the returned problem has an explanation."""
    _require_abducible(p, alpha)
    return p.replace(abox=p.abox | {normalize_assertion(p, alpha)})


def exist_to_rel(p: QAP) -> tuple[QAP, Assertion]:
    """P has an explanation iff the returned assertion is relevant for the returned problem.

    The least satisfiable predicate of the signature is used.  When every
    abducible predicate is unsatisfiable, a fresh concept joins the signature;
    a fresh predicate can always be dropped from an explanation, so existence
    is unchanged.
    """
    chosen: Optional[Predicate] = next((s for s in sorted(p.sigma) if satisfiable_predicate(p.tbox, s)), None)
    target = p
    if chosen is None:
        chosen = fresh_predicate(p, 1, "phi")
        target = p.replace(sigma=p.sigma | {chosen})
    args = fresh_individuals(p, chosen.arity, "d")
    return target, Assertion(chosen, tuple(args))


# --------------------------------------------------------------------------- query non-emptiness


def nonemptiness_to_exist(tbox: TBox, query: "CQ | UCQ", sigma: Iterable[Predicate]) -> QAP:
    report = validate_dllite(tbox)
    if not report.valid:
        raise InvalidTBox(f"functional roles specialized: {report.violations}")
    query = as_ucq(query)
    sigma = frozenset(sigma)
    taken = {x.name for x in sigma | tbox.predicates | query.predicates} | {i.name for i in query.individuals}
    if query.arity == 0:
        return QAP(tbox, ABox(), query, (), sigma)
    if query.is_instance_query():
        (a,) = _fresh_names(taken, "a", 1)
        return QAP(tbox, ABox(), query, (Individual(a),), sigma)
    (n,) = _fresh_names(taken, "N", 1)
    marker = Predicate(n, 1)
    boolean = UCQ(CQ((), list(cq.body) + [Atom(marker, (t,)) for t in cq.head]) for cq in query)
    return QAP(tbox, ABox(), boolean, (), sigma | {marker})


def is_query_nonempty(tbox: TBox, query: "CQ | UCQ", sigma: Iterable[Predicate]) -> bool:
    from .abduction import has_explanation

    return has_explanation(nonemptiness_to_exist(tbox, query, sigma))
