"""Maximal cyclic subgroups, independence cyclic sets and intersection witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groups import FiniteGroup, generated_subgroup


@dataclass(frozen=True)
class CyclicDecomposition:
    """The maximal cyclic subgroups of a group in canonical order.

    ``subgroups[i]`` is ``(generator, members)``; entries are sorted by
    descending size, then ascending generator, and the generator is the
    smallest element index generating ``members``.
    """

    group: FiniteGroup
    subgroups: tuple[tuple[int, frozenset[int]], ...]
    intersections: tuple[tuple[frozenset[int], ...], ...]

    @property
    def m(self) -> int:
        return len(self.subgroups)

    def members(self, i: int) -> frozenset[int]:
        return self.subgroups[i][1]

    def generator(self, i: int) -> int:
        return self.subgroups[i][0]

    def generators(self) -> list[int]:
        return [g for g, _ in self.subgroups]


@dataclass(frozen=True)
class IcsReport:
    ics_indices: tuple[int, ...]
    invmax_indices: tuple[int, ...]
    # excluded index i -> (j, non-identity element of <x_i> & <x_j>)
    witness: dict[int, tuple[int, int]]

    @property
    def icn(self) -> int:
        return len(self.ics_indices)

    @property
    def invmax(self) -> int:
        return len(self.invmax_indices)


def cyclic_subgroups(G: FiniteGroup) -> dict[frozenset[int], int]:
    """All cyclic subgroups, mapped to their smallest generator."""
    out: dict[frozenset[int], int] = {}
    for g in range(G.order):
        out.setdefault(generated_subgroup(G, g), g)
    return out


def maximal_cyclic_subgroups(G: FiniteGroup) -> CyclicDecomposition:
    subs = cyclic_subgroups(G)
    # a subgroup is maximal iff no strictly larger cyclic subgroup contains it
    by_size = sorted(subs, key=len, reverse=True)
    maximal = []
    for s in by_size:
        if not any(len(t) > len(s) and s < t for t in maximal):
            maximal.append(s)
    entries = sorted(((subs[s], s) for s in maximal), key=lambda e: (-len(e[1]), e[0]))
    inter = tuple(tuple(a & b for _, b in entries) for _, a in entries)
    return CyclicDecomposition(G, tuple(entries), inter)


def ics_report(d: CyclicDecomposition) -> IcsReport:
    e = d.group.identity
    ics, witness = [], {}
    for i in range(d.m):
        hit = None
        for j in range(d.m):
            if j != i and len(d.intersections[i][j]) > 1:
                hit = (j, min(x for x in d.intersections[i][j] if x != e))
                break
        if hit is None:
            ics.append(i)
        else:
            witness[i] = hit
    invmax = [i for i in ics if len(d.members(i)) == 2]
    return IcsReport(tuple(ics), tuple(invmax), witness)


def distinct_witnesses(d: CyclicDecomposition) -> Optional[dict[tuple[int, int], int]]:
    """Pick a non-identity h[i,j] in every pairwise intersection, all distinct.

    Backtracking with first-fail variable choice.  Returns None when no such
    selection exists (including m < 2).
    """
    if d.m < 2:
        return None
    e = d.group.identity
    pairs = [(i, j) for i in range(d.m) for j in range(i + 1, d.m)]
    domains = {p: sorted(x for x in d.intersections[p[0]][p[1]] if x != e) for p in pairs}
    if any(not dom for dom in domains.values()):
        return None
    if len(set().union(*map(set, domains.values()))) < len(pairs):
        return None

    chosen: dict[tuple[int, int], int] = {}
    used: set[int] = set()

    def solve() -> bool:
        free = [p for p in pairs if p not in chosen]
        if not free:
            return True
        best = min(free, key=lambda p: (sum(x not in used for x in domains[p]), p))
        for x in domains[best]:
            if x in used:
                continue
            chosen[best] = x
            used.add(x)
            if solve():
                return True
            del chosen[best]
            used.discard(x)
        return False

    return dict(sorted(chosen.items())) if solve() else None
