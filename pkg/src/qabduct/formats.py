"""Text formats for TBoxes, ABoxes, queries, signatures and assertions.

TBox lines::

    EXISTS enroll ISA Student
    Course ISA EXISTS teach-
    Student DISJ Course
    teach ISA involves          # role inclusion
    FUNCT teach-

A bare ``X ISA Y`` is read as a role inclusion when either side is known to be a
role (from ``EXISTS``, ``FUNCT``, an inverse marker, or the other input files);
otherwise as a concept inclusion.  The serializer writes role axioms whose kind
would be ambiguous with inverse markers on both sides, which reads back to the
same axiom.

Query lines use ``q(x,z) <- teach(x,y), enroll(z,y)``; individuals inside a
query are written in double quotes, e.g. ``B("c")``.
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import ParseError
from .model import (
    ABox, Assertion, Atom, AtomicConcept, CQ, ConceptDisjointness, ConceptInclusion, Exists,
    Functionality, Individual, Predicate, RoleDisjointness, RoleExpr, RoleInclusion, TBox, UCQ,
    Variable, check_identifier,
)

_IDENT = r"[A-Za-z][A-Za-z0-9_]*"
_ATOM = re.compile(rf"\s*({_IDENT})\s*\(([^()]*)\)\s*")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _ident(name: str, line: int, allow_anonymous: bool = False) -> str:
    name = name.strip()
    if allow_anonymous and name.startswith("_:"):
        rest = name[2:]
        if re.fullmatch(r"[A-Za-z0-9_]+", rest):
            return name
        raise ParseError(f"invalid anonymous individual {name!r}", line)
    try:
        return check_identifier(name)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


# --------------------------------------------------------------------------- TBox


def _role_hints(text: str) -> set[str]:
    hints = set()
    for _, line in _lines(text):
        for m in re.finditer(rf"EXISTS\s+({_IDENT})", line):
            hints.add(m.group(1))
        m = re.fullmatch(rf"FUNCT\s+({_IDENT})-?", line)
        if m:
            hints.add(m.group(1))
        for m in re.finditer(rf"({_IDENT})-(?![A-Za-z0-9_])", line):
            hints.add(m.group(1))
    return hints


def _parse_role(tok: str, line: int) -> RoleExpr:
    tok = tok.strip()
    inverted = tok.endswith("-")
    return RoleExpr(_ident(tok[:-1] if inverted else tok, line), inverted)


def _parse_basic(tok: str, line: int):
    tok = tok.strip()
    if tok.startswith("EXISTS"):
        rest = tok[len("EXISTS"):]
        if not rest[:1].isspace():
            raise ParseError(f"malformed concept {tok!r}", line)
        return Exists(_parse_role(rest, line))
    return AtomicConcept(_ident(tok, line))


def parse_tbox(text: str, roles: Iterable[str] = ()) -> TBox:
    """Parse a TBox; ``roles`` names predicates known to be roles from other inputs."""
    known_roles = set(roles) | _role_hints(text)
    axioms = []
    for n, line in _lines(text):
        m = re.fullmatch(r"FUNCT\s+(\S+)", line)
        if m:
            axioms.append(Functionality(_parse_role(m.group(1), n)))
            continue
        m = re.fullmatch(r"(.+?)\s+(ISA|DISJ)\s+(.+)", line)
        if not m:
            raise ParseError(f"cannot parse axiom {line!r}", n)
        left, op, right = m.group(1).strip(), m.group(2), m.group(3).strip()
        has_exists = left.startswith("EXISTS") or right.startswith("EXISTS")
        is_role = not has_exists and (
            left.endswith("-") or right.endswith("-")
            or left.rstrip("-") in known_roles or right.rstrip("-") in known_roles)
        if is_role:
            lr, rr = _parse_role(left, n), _parse_role(right, n)
            axioms.append(RoleInclusion(lr, rr) if op == "ISA" else RoleDisjointness(lr, rr))
        else:
            lc, rc = _parse_basic(left, n), _parse_basic(right, n)
            axioms.append(ConceptInclusion(lc, rc) if op == "ISA" else ConceptDisjointness(lc, rc))
    tbox = TBox(axioms)
    _check_kinds(tbox.predicates, None)
    return tbox


def _check_kinds(preds: Iterable[Predicate], line: int | None) -> None:
    seen: dict = {}
    for p in preds:
        if seen.setdefault(p.name, p.arity) != p.arity:
            raise ParseError(f"{p.name!r} used both as concept and role", line)


def _basic_str(b) -> str:
    return str(b)


def format_tbox(tbox: TBox, roles: Iterable[str] = ()) -> str:
    axioms = list(tbox)
    # role names that the parser will recognise without help
    hinted = set(roles)
    for ax in axioms:
        if isinstance(ax, Functionality):
            hinted.add(ax.role.base)
        elif isinstance(ax, (ConceptInclusion, ConceptDisjointness)):
            for b in (ax.lhs, ax.rhs):
                if isinstance(b, Exists):
                    hinted.add(b.role.base)
        elif ax.lhs.inverted or ax.rhs.inverted:
            hinted.update((ax.lhs.base, ax.rhs.base))
    lines = []
    for ax in axioms:
        if isinstance(ax, Functionality):
            lines.append(f"FUNCT {ax.role}")
            continue
        op = "ISA" if isinstance(ax, (ConceptInclusion, RoleInclusion)) else "DISJ"
        if isinstance(ax, (RoleInclusion, RoleDisjointness)):
            lhs, rhs = ax.lhs, ax.rhs
            if not (lhs.inverted or rhs.inverted) and not ({lhs.base, rhs.base} & hinted):
                lhs, rhs = lhs.inverse(), rhs.inverse()
            lines.append(f"{lhs} {op} {rhs}")
        else:
            lines.append(f"{_basic_str(ax.lhs)} {op} {_basic_str(ax.rhs)}")
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------- ABox / assertions


def parse_assertion(text: str, line: int | None = None, allow_anonymous: bool = False) -> Assertion:
    m = _ATOM.fullmatch(text)
    if not m:
        raise ParseError(f"cannot parse assertion {text!r}", line)
    name = _ident(m.group(1), line)
    args = [a.strip() for a in m.group(2).split(",")] if m.group(2).strip() else []
    if len(args) not in (1, 2):
        raise ParseError(f"assertion {text!r} must have one or two arguments", line)
    inds = tuple(Individual(_ident(a, line, allow_anonymous)) for a in args)
    return Assertion(Predicate(name, len(inds)), inds)


def parse_abox(text: str, allow_anonymous: bool = False) -> ABox:
    out = [parse_assertion(line, n, allow_anonymous) for n, line in _lines(text)]
    _check_kinds((a.predicate for a in out), None)
    return ABox(out)


def format_abox(abox: "ABox | Iterable[Assertion]") -> str:
    return "".join(f"{a}\n" for a in sorted(abox))


# --------------------------------------------------------------------------- queries


def _parse_term(tok: str, line: int):
    tok = tok.strip()
    if len(tok) >= 2 and tok[0] == tok[-1] == '"':
        return Individual(_ident(tok[1:-1], line))
    return Variable(_ident(tok, line))


def parse_cq(text: str, line: int | None = None) -> CQ:
    m = re.fullmatch(rf"\s*({_IDENT})\s*\(([^()]*)\)\s*<-\s*(.*)", text)
    if not m:
        raise ParseError(f"cannot parse query {text!r}", line)
    head_txt = m.group(2).strip()
    head = tuple(Variable(_ident(v, line)) for v in head_txt.split(",")) if head_txt else ()
    if len(set(head)) != len(head):
        raise ParseError("answer variables must be distinct", line)
    body_txt = m.group(3).strip()
    atoms = []
    pos = 0
    while pos < len(body_txt):
        am = _ATOM.match(body_txt, pos)
        if not am:
            raise ParseError(f"cannot parse query body {body_txt!r}", line)
        name = _ident(am.group(1), line)
        args = tuple(_parse_term(t, line) for t in am.group(2).split(","))
        if len(args) not in (1, 2):
            raise ParseError(f"atom {am.group(0).strip()!r} must have one or two arguments", line)
        atoms.append(Atom(Predicate(name, len(args)), args))
        pos = am.end()
        if pos < len(body_txt):
            if body_txt[pos] != ",":
                raise ParseError(f"expected ',' in {body_txt!r}", line)
            pos += 1
    if not atoms:
        raise ParseError("query body is empty", line)
    try:
        return CQ(head, atoms)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None


def parse_query(text: str) -> UCQ:
    cqs = []
    for n, line in _lines(text):
        cq = parse_cq(line, n)
        if cqs and cq.head != cqs[0].head:
            raise ParseError("all lines of a query must share the same head", n)
        cqs.append(cq)
    if not cqs:
        raise ParseError("no query found")
    _check_kinds((p for cq in cqs for p in cq.predicates), None)
    return UCQ(cqs)


def format_cq(cq: CQ) -> str:
    return str(cq)


def format_query(query: UCQ) -> str:
    return "".join(f"{cq}\n" for cq in query)


# --------------------------------------------------------------------------- signatures and tuples


def parse_individuals(text: str) -> tuple[Individual, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(Individual(_ident(t, None)) for t in text.split(","))


def parse_signature(text: str, known: Iterable[Predicate] = ()) -> frozenset[Predicate]:
    """Comma-separated names; ``name/2`` forces a role, ``name/1`` a concept.

    Without a suffix the kind is taken from ``known`` and defaults to concept.
    """
    by_name = {p.name: p for p in known}
    out = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        name, _, arity = tok.partition("/")
        name = _ident(name, None)
        if arity:
            if arity not in ("1", "2"):
                raise ParseError(f"bad arity in {tok!r}")
            out.add(Predicate(name, int(arity)))
        else:
            out.add(by_name.get(name, Predicate(name, 1)))
    if not out:
        raise ParseError("signature is empty")
    return frozenset(out)


def format_signature(sigma: Iterable[Predicate]) -> str:
    return ",".join(f"{p.name}/{p.arity}" for p in sorted(sigma))
