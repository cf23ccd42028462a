"""Canonical forms of atom sets up to renaming of a designated set of tokens.

Used for CQs (quantified variables are renamable) and for explanations
(anonymous individuals are renamable).
"""

from __future__ import annotations

from itertools import permutations, product
from math import factorial
from typing import Callable, Hashable, Iterable, Sequence

# Above this many candidate labelings we fall back to a refinement-only order,
# which still never merges non-isomorphic inputs.
_PERMUTATION_LIMIT = 5040

RawAtom = tuple[Hashable, tuple]


def canonical_labeling(atoms: Iterable[RawAtom], renamable: Callable[[Hashable], bool],
                       fixed_key: Callable[[Hashable], tuple]) -> tuple[tuple, dict]:
    """Return ``(key, labels)``.

    ``key`` is a hashable form equal for two atom sets iff they coincide up to a
    bijective renaming of renamable tokens (exactly, below the permutation limit).
    ``labels`` maps every renamable token to its canonical index.
    """
    atoms = list(dict.fromkeys(atoms))
    tokens: list = []
    for _, args in atoms:
        for t in args:
            if renamable(t) and t not in tokens:
                tokens.append(t)
    if not tokens:
        return tuple(sorted((p, tuple(fixed_key(t) for t in args)) for p, args in atoms)), {}

    if len(tokens) <= 3:
        # trying every permutation is cheaper than refining
        ordered = [tokens]
    else:
        colour = _refine(atoms, tokens, renamable, fixed_key)
        groups: dict = {}
        for t in tokens:
            groups.setdefault(colour[t], []).append(t)
        ordered = [groups[c] for c in sorted(groups)]

    count = 1
    for g in ordered:
        count *= factorial(len(g))
        if count > _PERMUTATION_LIMIT:
            break

    def encode(labels: dict) -> tuple:
        return tuple(sorted(
            (p, tuple((1, labels[t]) if renamable(t) else fixed_key(t) for t in args))
            for p, args in atoms))

    if count > _PERMUTATION_LIMIT:
        labels = {t: i for i, t in enumerate(t for g in ordered for t in g)}
        return encode(labels), labels

    best_key, best_labels = None, {}
    for choice in product(*(permutations(g) for g in ordered)):
        labels = {t: i for i, t in enumerate(t for g in choice for t in g)}
        key = encode(labels)
        if best_key is None or key < best_key:
            best_key, best_labels = key, labels
    # renumber by first appearance in the canonical key, for readable names
    first: dict = {}
    for _, args in best_key:
        for kind, val in args:
            if kind == 1 and val not in first:
                first[val] = len(first)
    return best_key, {t: first[i] for t, i in best_labels.items()}


def _refine(atoms: Sequence[RawAtom], tokens: list, renamable, fixed_key) -> dict:
    """Colour refinement: a token's colour summarises the atoms it occurs in."""
    colour = {t: () for t in tokens}
    for _ in range(len(tokens)):
        sig = {t: [] for t in tokens}
        for p, args in atoms:
            shape = tuple(("r", colour[a]) if renamable(a) else ("f", fixed_key(a)) for a in args)
            for i, a in enumerate(args):
                if renamable(a):
                    same = tuple(j for j, b in enumerate(args) if b == a)
                    sig[a].append((p, i, same, shape))
        new = {t: (colour[t], tuple(sorted(sig[t]))) for t in tokens}
        # compress colours to small ranks to keep keys short
        ranks = {c: n for n, c in enumerate(sorted(set(new.values())))}
        new = {t: ranks[new[t]] for t in tokens}
        if len(set(new.values())) == len(set(colour.values())) and _same_partition(colour, new):
            return new
        colour = new
    return colour


def _same_partition(a: dict, b: dict) -> bool:
    pairs = {(a[t], b[t]) for t in a}
    return len(pairs) == len(set(a.values())) == len(set(b.values()))


# --------------------------------------------------------------------------- explanations

def _ind_key(ind) -> tuple:
    return (0, ind.name)


def _raw_assertions(assertions) -> list[RawAtom]:
    return [((a.predicate.name, a.predicate.arity), a.args) for a in assertions]


def abox_key(assertions) -> tuple:
    """Key identifying an assertion set up to renaming of anonymous individuals."""
    key, _ = canonical_labeling(_raw_assertions(assertions), lambda i: i.anonymous, _ind_key)
    return key


def canonical_renaming(assertions) -> dict:
    """Map each anonymous individual to its canonical name ``_:a1, _:a2, …``."""
    from .model import anonymous

    _, labels = canonical_labeling(_raw_assertions(assertions), lambda i: i.anonymous, _ind_key)
    return {old: anonymous(n + 1) for old, n in labels.items()}


def canonical_abox(assertions):
    """Rename anonymous individuals canonically."""
    from .model import ABox, Assertion

    rename = canonical_renaming(assertions)
    return ABox(Assertion(a.predicate, tuple(rename.get(i, i) for i in a.args)) for a in assertions)
