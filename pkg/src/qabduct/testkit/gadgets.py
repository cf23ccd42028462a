"""Hardness gadgets turning graph problems into abduction instances."""

from __future__ import annotations

from ..errors import PreconditionViolated
from ..model import (
    ABox, Assertion, Atom, CQ, Individual, Predicate, QAP, TBox, Variable, concept, role, sigma_of,
)
from .graphs import DirectedGraph


def _a(pred: Predicate, *names: str) -> Assertion:
    return Assertion(pred, tuple(Individual(n) for n in names))


def _q(pred: Predicate, *names: str) -> Atom:
    return Atom(pred, tuple(Variable(n) for n in names))


# --------------------------------------------------------------------------- homomorphism


def gadget_homomorphism(g: DirectedGraph, g2: DirectedGraph, unrestricted: bool = False) -> tuple[QAP, ABox]:
    """Instance solvable iff ``g`` maps homomorphically into ``g2``; candidate ``{B(c)}``.

    With ``unrestricted`` the signature covers every predicate, which turns the
    question into recognizing the candidate.
    """
    e, b = role("e"), concept("B")
    abox = ABox(_a(e, f"c_{x}", f"c_{y}") for x, y in g2.edges)
    c = Individual("c")
    body = [_q(e, f"x_{x}", f"x_{y}") for x, y in g.edges] + [Atom(b, (c,))]
    query = CQ((), body)
    sigma = sigma_of(TBox(), abox, query) if unrestricted else {b}
    return QAP(TBox(), abox, query, (), sigma), ABox([Assertion(b, (c,))])


# --------------------------------------------------------------------------- odd minimum vertex cover

EDGE, NEQ, PAR, L, M = role("Edge"), role("Neq"), role("P"), concept("L"), concept("M")


def _c(i: int, j: int) -> str:
    return f"c_{i}_{j}"


def _par(k: int) -> str:
    return "odd" if k % 2 else "even"


def gadget_odd_min_vertex_cover(g: DirectedGraph) -> tuple[QAP, Assertion]:
    """``M(odd)`` is ≤-necessary iff the least vertex cover of ``g`` has odd size."""
    if len(g) < 2 or not g.is_connected():
        raise PreconditionViolated("the graph must be connected with at least two vertices")
    m = len(g)
    index = {v: i for i, v in enumerate(g.vertices, start=1)}
    facts = []
    for j in range(m + 1):
        facts += [_a(L, _c(i, j)) for i in range(j, m + 1)]
        for i1 in range(1, m + 1):
            for i2 in range(1, m + 1):
                if i1 <= j or i2 <= j:
                    facts.append(_a(EDGE, _c(i1, j), _c(i2, j)))
                if i1 != i2:
                    facts.append(_a(NEQ, _c(i1, j), _c(i2, j)))
    facts += [_a(PAR, _c(i, j), _par(j)) for i in range(m + 1) for j in range(m + 1)]

    x = {i: f"x{i}" for i in range(1, m + 1)}
    body = [_q(EDGE, x[index[a]], x[index[b]]) for a, b in sorted(g.edges, key=lambda e: (index[e[0]], index[e[1]]))]
    body += [_q(NEQ, x[i1], x[i2]) for i1 in range(1, m + 1) for i2 in range(1, m + 1) if i1 != i2]
    body += [_q(L, x[i]) for i in range(1, m + 1)] + [_q(PAR, x[1], "y"), _q(M, "y")]
    p = QAP(TBox(), ABox(facts), CQ((), body), (), {M, L})
    return p, _a(M, "odd")


def up(g: DirectedGraph, k: int) -> ABox:
    """The explanation a size-``k`` vertex cover induces."""
    return ABox([_a(L, _c(i, k)) for i in range(1, k + 1)] + [_a(M, _par(k))])


# --------------------------------------------------------------------------- HP / no HP

E_, D_, EP_, A_ = role("e"), role("d"), role("ep"), concept("A")


def gadget_hp_nohp(g: DirectedGraph, g2: DirectedGraph) -> tuple[QAP, ABox]:
    """Candidate ``{A(o_i)}`` is meant to be minimal iff ``g`` has a Hamiltonian path and ``g2`` has none.

    Vertices are prefixed (``v_`` and ``w_``), so the two vertex sets never clash.
    """
    if not g.vertices or not g2.vertices:
        raise PreconditionViolated("both graphs need at least one vertex")
    vg = [f"v_{v}" for v in g.vertices]
    wg = [f"w_{v}" for v in g2.vertices]
    vmap = dict(zip(g.vertices, vg))
    wmap = dict(zip(g2.vertices, wg))
    n2 = len(wg)
    os_ = [f"o{i}" for i in range(1, n2 + 1)]

    facts = [_a(E_, vmap[a], vmap[b]) for a, b in g.edges]
    facts += [_a(D_, a, b) for a in vg for b in vg if a != b]
    facts += [_a(EP_, wmap[a], wmap[b]) for a, b in g2.edges]
    facts += [_a(D_, a, b) for a in wg for b in wg if a != b]
    facts += [_a(A_, w) for w in wg]
    facts += [f for a in os_ for b in os_ if a != b for f in (_a(EP_, a, b), _a(D_, a, b))]

    xs = [f"x{i}" for i in range(1, len(vg) + 1)]
    ys = [f"y{i}" for i in range(1, n2 + 1)]
    body = [_q(E_, xs[i], xs[i + 1]) for i in range(len(xs) - 1)]
    body += [_q(D_, a, b) for a in xs for b in xs if a != b]
    body += [_q(EP_, ys[i], ys[i + 1]) for i in range(n2 - 1)]
    body += [_q(D_, a, b) for a in ys for b in ys if a != b]
    body += [_q(A_, y) for y in ys]
    abox = ABox(facts)
    query = CQ((), body)
    p = QAP(TBox(), abox, query, (), sigma_of(TBox(), abox, query))
    return p, ABox(_a(A_, o) for o in os_)
