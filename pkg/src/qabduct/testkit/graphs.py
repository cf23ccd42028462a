"""Small directed graphs, exhaustive graph oracles and isomorphism-free enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

import networkx as nx

from ..errors import InvalidInput, TooLarge

ORACLE_LIMIT = 8


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple
    edges: frozenset

    def __init__(self, vertices: Iterable, edges: Iterable[tuple] = ()) -> None:
        vs = tuple(dict.fromkeys(vertices))
        es = frozenset((a, b) for a, b in edges)
        known = set(vs)
        if any(a not in known or b not in known for a, b in es):
            raise InvalidInput("edges must connect existing vertices")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    def __len__(self) -> int:
        return len(self.vertices)

    def renamed(self, prefix: str) -> "DirectedGraph":
        m = {v: f"{prefix}{v}" for v in self.vertices}
        return DirectedGraph([m[v] for v in self.vertices], [(m[a], m[b]) for a, b in self.edges])

    def is_connected(self) -> bool:
        """Weak connectivity; the empty graph counts as disconnected."""
        if not self.vertices:
            return False
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return nx.is_weakly_connected(g)


def _guard(*graphs: DirectedGraph) -> None:
    for g in graphs:
        if len(g) > ORACLE_LIMIT:
            raise TooLarge(f"graph with {len(g)} vertices exceeds the oracle limit {ORACLE_LIMIT}")


def min_vertex_cover(g: DirectedGraph) -> int:
    """Least size of a vertex set meeting every edge, edges read as undirected."""
    _guard(g)
    for k in range(len(g) + 1):
        for cover in combinations(g.vertices, k):
            chosen = set(cover)
            if all(a in chosen or b in chosen for a, b in g.edges):
                return k
    return len(g)


def has_homomorphism(g: DirectedGraph, g2: DirectedGraph) -> bool:
    _guard(g, g2)
    if not g.vertices:
        return True
    for image in product(g2.vertices, repeat=len(g)):
        h = dict(zip(g.vertices, image))
        if all((h[a], h[b]) in g2.edges for a, b in g.edges):
            return True
    return False


def has_hamiltonian_path(g: DirectedGraph) -> bool:
    _guard(g)
    if not g.vertices:
        return True
    return any(all((p[i], p[i + 1]) in g.edges for i in range(len(p) - 1))
               for p in permutations(g.vertices))


def digraphs(n: int) -> Iterator[DirectedGraph]:
    """All loop-free digraphs on vertices ``0..n-1``, one per isomorphism class."""
    vs = tuple(range(n))
    slots = [(a, b) for a in vs for b in vs if a != b]
    perms = list(permutations(vs))
    seen: set = set()
    for mask in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        key = min(tuple(sorted((p[a], p[b]) for a, b in edges)) for p in perms)
        if key not in seen:
            seen.add(key)
            yield DirectedGraph(vs, key)


def connected_digraphs(lo: int, hi: int) -> Iterator[DirectedGraph]:
    for n in range(lo, hi + 1):
        yield from (g for g in digraphs(n) if g.is_connected())
