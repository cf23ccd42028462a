"""Immutable data model: DL-Lite_A ontologies, conjunctive queries and abduction problems."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import chain
from typing import Iterable, Iterator, Union

from .errors import ArityMismatch, InvalidInput, UnsafeQuery

ANON_PREFIX = "_:"
FRESH_PREFIX = "__qx_"
IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


# --------------------------------------------------------------------------- symbols


@dataclass(frozen=True, order=True)
class Predicate:
    """A concept name (arity 1) or a role name (arity 2)."""

    name: str
    arity: int

    def __post_init__(self) -> None:
        if not self.name:
            raise InvalidInput("predicate name must be nonempty")
        if self.arity not in (1, 2):
            raise InvalidInput(f"predicate {self.name!r} has unsupported arity {self.arity}")

    @property
    def kind(self) -> str:
        return "concept" if self.arity == 1 else "role"

    def __str__(self) -> str:
        return self.name


def concept(name: str) -> Predicate:
    return Predicate(name, 1)


def role(name: str) -> Predicate:
    return Predicate(name, 2)


@dataclass(frozen=True, order=True)
class Individual:
    name: str

    @property
    def anonymous(self) -> bool:
        return self.name.startswith(ANON_PREFIX)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Individual, Variable]


def term_key(t: Term) -> tuple[int, str]:
    """Total order on terms: individuals before variables."""
    return (0, t.name) if isinstance(t, Individual) else (1, t.name)


@dataclass(frozen=True, order=True)
class RoleExpr:
    """A role name or its inverse."""

    base: str
    inverted: bool = False

    def inverse(self) -> "RoleExpr":
        return RoleExpr(self.base, not self.inverted)

    @property
    def predicate(self) -> Predicate:
        return role(self.base)

    def __str__(self) -> str:
        return self.base + ("-" if self.inverted else "")


@dataclass(frozen=True, order=True)
class AtomicConcept:
    name: str

    @property
    def predicate(self) -> Predicate:
        return concept(self.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Exists:
    role: RoleExpr

    @property
    def predicate(self) -> Predicate:
        return self.role.predicate

    def __str__(self) -> str:
        return f"EXISTS {self.role}"


BasicConcept = Union[AtomicConcept, Exists]


def basic_key(b: BasicConcept) -> tuple:
    if isinstance(b, AtomicConcept):
        return (0, b.name, False)
    return (1, b.role.base, b.role.inverted)


# --------------------------------------------------------------------------- axioms


@dataclass(frozen=True)
class ConceptInclusion:
    lhs: BasicConcept
    rhs: BasicConcept


@dataclass(frozen=True)
class ConceptDisjointness:
    lhs: BasicConcept
    rhs: BasicConcept


def _orient(lhs: RoleExpr, rhs: RoleExpr) -> tuple[RoleExpr, RoleExpr]:
    # R1 ⊑ R2 and R1⁻ ⊑ R2⁻ say the same thing; keep the left side uninverted.
    if lhs.inverted:
        return lhs.inverse(), rhs.inverse()
    return lhs, rhs


@dataclass(frozen=True)
class RoleInclusion:
    lhs: RoleExpr
    rhs: RoleExpr

    def __post_init__(self) -> None:
        lhs, rhs = _orient(self.lhs, self.rhs)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class RoleDisjointness:
    lhs: RoleExpr
    rhs: RoleExpr

    def __post_init__(self) -> None:
        lhs, rhs = _orient(self.lhs, self.rhs)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class Functionality:
    role: RoleExpr


Axiom = Union[ConceptInclusion, ConceptDisjointness, RoleInclusion, RoleDisjointness, Functionality]
PositiveInclusion = Union[ConceptInclusion, RoleInclusion]


def axiom_predicates(ax: Axiom) -> set[Predicate]:
    if isinstance(ax, Functionality):
        return {ax.role.predicate}
    return {ax.lhs.predicate, ax.rhs.predicate}


def axiom_key(ax: Axiom) -> tuple:
    order = (ConceptInclusion, RoleInclusion, ConceptDisjointness, RoleDisjointness, Functionality)
    rank = order.index(type(ax))
    if isinstance(ax, Functionality):
        return (rank, (ax.role.base, ax.role.inverted))
    if isinstance(ax, (ConceptInclusion, ConceptDisjointness)):
        return (rank, basic_key(ax.lhs), basic_key(ax.rhs))
    return (rank, (ax.lhs.base, ax.lhs.inverted), (ax.rhs.base, ax.rhs.inverted))


@dataclass(frozen=True)
class TBox:
    axioms: frozenset = frozenset()

    def __init__(self, axioms: Iterable[Axiom] = ()) -> None:
        object.__setattr__(self, "axioms", frozenset(axioms))

    def __iter__(self) -> Iterator[Axiom]:
        return iter(sorted(self.axioms, key=axiom_key))

    def __len__(self) -> int:
        return len(self.axioms)

    def with_axioms(self, *extra: Axiom) -> "TBox":
        return TBox(self.axioms | set(extra))

    @property
    def positive_inclusions(self) -> list[PositiveInclusion]:
        return [a for a in self if isinstance(a, (ConceptInclusion, RoleInclusion))]

    @property
    def predicates(self) -> frozenset[Predicate]:
        return frozenset(chain.from_iterable(axiom_predicates(a) for a in self.axioms))


# --------------------------------------------------------------------------- assertions


@dataclass(frozen=True, order=True)
class Assertion:
    predicate: Predicate
    args: tuple[Individual, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.predicate.arity:
            raise ArityMismatch(f"{self.predicate.name} expects {self.predicate.arity} argument(s)")
        if not all(isinstance(a, Individual) for a in self.args):
            raise InvalidInput("assertions must be ground")

    def __str__(self) -> str:
        return f"{self.predicate.name}({','.join(a.name for a in self.args)})"


def assertion(pred: str, *args: str) -> Assertion:
    """Shorthand: ``assertion("enroll", "Anna", "KR")``."""
    return Assertion(Predicate(pred, len(args)), tuple(Individual(a) for a in args))


@dataclass(frozen=True)
class ABox:
    assertions: frozenset = frozenset()

    def __init__(self, assertions: Iterable[Assertion] = ()) -> None:
        object.__setattr__(self, "assertions", frozenset(assertions))

    def __iter__(self) -> Iterator[Assertion]:
        return iter(sorted(self.assertions))

    def __len__(self) -> int:
        return len(self.assertions)

    def __contains__(self, item: object) -> bool:
        return item in self.assertions

    def __or__(self, other: "ABox | Iterable[Assertion]") -> "ABox":
        extra = other.assertions if isinstance(other, ABox) else frozenset(other)
        return ABox(self.assertions | extra)

    def __sub__(self, other: "ABox | Iterable[Assertion]") -> "ABox":
        drop = other.assertions if isinstance(other, ABox) else frozenset(other)
        return ABox(self.assertions - drop)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"

    @property
    def individuals(self) -> frozenset[Individual]:
        return frozenset(chain.from_iterable(a.args for a in self.assertions))

    @property
    def predicates(self) -> frozenset[Predicate]:
        return frozenset(a.predicate for a in self.assertions)


# --------------------------------------------------------------------------- queries


@dataclass(frozen=True)
class Atom:
    predicate: Predicate
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.predicate.arity:
            raise ArityMismatch(f"{self.predicate.name} expects {self.predicate.arity} argument(s)")

    @property
    def variables(self) -> list[Variable]:
        return [t for t in self.args if isinstance(t, Variable)]

    def sort_key(self) -> tuple:
        return (self.predicate.name, self.predicate.arity, tuple(term_key(t) for t in self.args))

    def __str__(self) -> str:
        return f"{self.predicate.name}({','.join(_term_str(t) for t in self.args)})"


def _term_str(t: Term) -> str:
    return f'"{t.name}"' if isinstance(t, Individual) else t.name


@dataclass(frozen=True)
class CQ:
    """A conjunctive query ``q(head) <- body``.

    Input queries have a head of distinct variables.  Rewritten queries may carry
    repeated variables or individuals in the head after unification.
    """

    head: tuple
    body: frozenset

    def __init__(self, head: Iterable[Term], body: Iterable[Atom]) -> None:
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "body", frozenset(body))
        present = {t for a in self.body for t in a.args}
        for t in self.head:
            if isinstance(t, Variable) and t not in present:
                raise UnsafeQuery(f"answer variable {t.name} does not occur in the body")

    @property
    def arity(self) -> int:
        return len(self.head)

    @property
    def atoms(self) -> list[Atom]:
        return sorted(self.body, key=Atom.sort_key)

    @property
    def terms(self) -> frozenset[Term]:
        return frozenset(t for a in self.body for t in a.args) | frozenset(self.head)

    @property
    def variables(self) -> frozenset[Variable]:
        return frozenset(t for t in self.terms if isinstance(t, Variable))

    @property
    def quantified(self) -> list[Variable]:
        """Body variables that are not answer variables, in a stable order."""
        head = set(self.head)
        seen: list[Variable] = []
        for a in self.atoms:
            for t in a.args:
                if isinstance(t, Variable) and t not in head and t not in seen:
                    seen.append(t)
        return seen

    @property
    def individuals(self) -> frozenset[Individual]:
        return frozenset(t for t in self.terms if isinstance(t, Individual))

    @property
    def predicates(self) -> frozenset[Predicate]:
        return frozenset(a.predicate for a in self.body)

    def is_instance_query(self) -> bool:
        if self.arity != 1 or len(self.body) != 1:
            return False
        (atom,) = self.body
        return atom.predicate.arity == 1 and atom.args == self.head and isinstance(self.head[0], Variable)

    def __str__(self) -> str:
        head = ",".join(_term_str(t) for t in self.head)
        return f"q({head}) <- " + ", ".join(str(a) for a in self.atoms)


@dataclass(frozen=True)
class UCQ:
    disjuncts: tuple

    def __init__(self, disjuncts: Iterable[CQ]) -> None:
        ds = tuple(dict.fromkeys(disjuncts))
        if not ds:
            raise InvalidInput("a UCQ needs at least one disjunct")
        if len({d.arity for d in ds}) != 1:
            raise ArityMismatch("all disjuncts of a UCQ must have the same arity")
        object.__setattr__(self, "disjuncts", ds)

    @property
    def arity(self) -> int:
        return self.disjuncts[0].arity

    def __iter__(self) -> Iterator[CQ]:
        return iter(self.disjuncts)

    def __len__(self) -> int:
        return len(self.disjuncts)

    @property
    def predicates(self) -> frozenset[Predicate]:
        return frozenset(chain.from_iterable(d.predicates for d in self.disjuncts))

    @property
    def individuals(self) -> frozenset[Individual]:
        return frozenset(chain.from_iterable(d.individuals for d in self.disjuncts))

    def is_instance_query(self) -> bool:
        return len(self.disjuncts) == 1 and self.disjuncts[0].is_instance_query()

    def __str__(self) -> str:
        return "\n".join(str(d) for d in self.disjuncts)


def as_ucq(query: "CQ | UCQ") -> UCQ:
    return query if isinstance(query, UCQ) else UCQ([query])


def max_atoms(query: "CQ | UCQ") -> int:
    return max(len(d.body) for d in as_ucq(query))


def max_terms(query: "CQ | UCQ") -> int:
    return max(len({t for a in d.body for t in a.args}) for d in as_ucq(query))


# --------------------------------------------------------------------------- problems


class PreferenceOrder(Enum):
    NONE = "none"
    SUBSET = "subset"
    CARD = "card"


Signature = frozenset  # of Predicate; nonempty inside a QAP


def _check_namespaces(preds: Iterable[Predicate]) -> None:
    arities: dict[str, int] = {}
    for p in preds:
        if arities.setdefault(p.name, p.arity) != p.arity:
            raise InvalidInput(f"{p.name!r} is used both as a concept and as a role")


@dataclass(frozen=True)
class QAP:
    """Query abduction problem ⟨T, A, q, tuple, Σ⟩."""

    tbox: TBox
    abox: ABox
    query: UCQ
    tuple: tuple
    sigma: frozenset

    def __init__(self, tbox: TBox, abox: ABox, query: "CQ | UCQ", tuple_: Iterable[Individual],
                 sigma: Iterable[Predicate]) -> None:
        object.__setattr__(self, "tbox", tbox)
        object.__setattr__(self, "abox", abox)
        object.__setattr__(self, "query", as_ucq(query))
        object.__setattr__(self, "tuple", tuple(tuple_))
        object.__setattr__(self, "sigma", frozenset(sigma))
        if not self.sigma:
            raise InvalidInput("the explanation signature must be nonempty")
        if len(self.tuple) != self.query.arity:
            raise ArityMismatch(f"tuple has {len(self.tuple)} element(s), query arity is {self.query.arity}")
        if any(i.anonymous for i in self.individuals):
            raise InvalidInput("anonymous individuals cannot occur in a QAP")
        _check_namespaces(chain(self.sigma, self.tbox.predicates, self.abox.predicates, self.query.predicates))

    @property
    def individuals(self) -> frozenset[Individual]:
        return self.abox.individuals | self.query.individuals | frozenset(self.tuple)

    def replace(self, **changes) -> "QAP":
        fields_ = {"tbox": self.tbox, "abox": self.abox, "query": self.query,
                   "tuple_": self.tuple, "sigma": self.sigma}
        fields_.update(changes)
        return QAP(**fields_)


# --------------------------------------------------------------------------- operations


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_dllite(tbox: TBox) -> ValidationReport:
    """Functional (or inverse functional) roles must not be specialized."""
    functional = {a.role.base: a for a in tbox if isinstance(a, Functionality)}
    bad = []
    for ax in tbox:
        if isinstance(ax, RoleInclusion) and ax.rhs.base in functional:
            bad.append((functional[ax.rhs.base], ax))
    return ValidationReport(tuple(bad))


def sigma_of(tbox: TBox, abox: ABox, query: "CQ | UCQ") -> frozenset[Predicate]:
    return tbox.predicates | abox.predicates | as_ucq(query).predicates


def is_unrestricted(p: QAP) -> bool:
    return sigma_of(p.tbox, p.abox, p.query) <= p.sigma


def is_sigma_abox(abox: "ABox | Iterable[Assertion]", sigma: Iterable[Predicate]) -> bool:
    sig = frozenset(sigma)
    return all(a.predicate in sig for a in abox)


def fresh_anonymous(context: Iterable[Individual]) -> Individual:
    used = {i.name for i in context}
    n = 1
    while f"{ANON_PREFIX}a{n}" in used:
        n += 1
    return Individual(f"{ANON_PREFIX}a{n}")


def anonymous(n: int) -> Individual:
    return Individual(f"{ANON_PREFIX}a{n}")


def check_identifier(name: str) -> str:
    """Reject names that are not plain identifiers or that use reserved prefixes."""
    if name.startswith(ANON_PREFIX) or name.startswith(FRESH_PREFIX) or not IDENTIFIER.match(name):
        raise InvalidInput(f"invalid identifier {name!r}")
    return name
