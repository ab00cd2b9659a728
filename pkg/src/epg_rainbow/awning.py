"""Awning certificates: verification, exhaustive search and order probing.

Positions ``0..m-1`` refer to the decomposition entries listed in
``cert.order``, so ``h[(i, j)]`` lies in the intersection of entries
``order[i]`` and ``order[j]``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .cyclic import CyclicDecomposition

DEFAULT_AWNING_BUDGET = 10_000_000


class DimensionMismatch(ValueError):
    pass


class SearchBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class AwningCertificate:
    order: tuple[int, ...]
    witnesses: dict[tuple[int, int], int]
    side: dict[tuple[int, int], str]

    @property
    def m(self) -> int:
        return len(self.order)

    def row(self, i: int) -> list[int]:
        return [self.witnesses[(i, j)] for j in range(i + 1, self.m)]

    def to_json(self) -> dict:
        return {"order": list(self.order),
                "witnesses": [{"i": i, "j": j, "element": self.witnesses[(i, j)],
                               "side": self.side[(i, j)]}
                              for (i, j) in sorted(self.witnesses)]}

    @classmethod
    def from_json(cls, obj: dict) -> "AwningCertificate":
        w, s = {}, {}
        for rec in obj["witnesses"]:
            w[(rec["i"], rec["j"])] = rec["element"]
            s[(rec["i"], rec["j"])] = rec["side"]
        return cls(tuple(obj["order"]), w, s)


@dataclass(frozen=True)
class Violation:
    condition: str  # "1", "2", "3a".."3d"
    where: tuple[int, ...]

    def __str__(self) -> str:
        return f"condition {self.condition} at {self.where}"


def _pairs(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def verify_awning(d: CyclicDecomposition, cert: AwningCertificate
                  ) -> tuple[bool, Optional[Violation]]:
    m = d.m
    if sorted(cert.order) != list(range(m)):
        raise DimensionMismatch(f"order {cert.order} is not a permutation of 0..{m - 1}")
    if set(cert.witnesses) != set(_pairs(m)) or set(cert.side) != set(_pairs(m)):
        raise DimensionMismatch(f"certificate must give h[i][j] for all 0 <= i < j < {m}")
    h, side, o = cert.witnesses, cert.side, cert.order

    for i, j in _pairs(m):
        if side[(i, j)] not in ("A", "B"):
            return False, Violation("1", (i, j))
        if h[(i, j)] not in d.intersections[o[i]][o[j]]:
            return False, Violation("2", (i, j))

    for i in range(m):
        for j in range(i + 1, m - 1):
            for r in range(i + 1, m):
                for s in range(j + 1, m):
                    if h[(j, s)] != h[(i, r)]:
                        continue
                    a_side = side[(i, r)]
                    if r == j:
                        if a_side == "A" and side[(j, s)] != "B":
                            return False, Violation("3a", (i, j, r, s))
                        if a_side == "B" and side[(j, s)] != "A":
                            return False, Violation("3b", (i, j, r, s))
                    elif r == s:
                        if a_side == "A" and side[(j, r)] != "A":
                            return False, Violation("3c", (i, j, r, s))
                        if a_side == "B" and side[(j, r)] != "B":
                            return False, Violation("3d", (i, j, r, s))
    return True, None


class _ParityUnion:
    """Union-find over side flags with "same"/"different" relations and rollback."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n  # flag(x) xor flag(parent[x])
        self.size = [1] * n
        self.history: list[tuple[int, int]] = []

    def find(self, x: int) -> tuple[int, int]:
        p = 0
        while self.parent[x] != x:
            p ^= self.parity[x]
            x = self.parent[x]
        return x, p

    def relate(self, a: int, b: int, differ: int) -> bool:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == differ
        if self.size[ra] < self.size[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ differ
        self.size[ra] += self.size[rb]
        self.history.append((rb, ra))
        return True

    def mark(self) -> int:
        return len(self.history)

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            rb, ra = self.history.pop()
            self.parent[rb] = rb
            self.parity[rb] = 0
            self.size[ra] -= self.size[rb]


def find_awning(d: CyclicDecomposition, order: Optional[Sequence[int]] = None,
                budget: int = DEFAULT_AWNING_BUDGET,
                accept: Optional[Callable[[AwningCertificate], bool]] = None,
                ) -> Optional[AwningCertificate]:
    """First awning certificate in search order, or None.

    Witnesses are chosen pair by pair in row-major order, each from the
    pairwise intersection in ascending index order (identity first).  Condition
    3 only ever says two side flags are equal or different, so a witness
    choice is kept while those relations stay consistent.  For a complete
    witness matrix the side flags are enumerated lexicographically (A before
    B) over the free components.  Without ``accept`` the first consistent
    certificate is returned; with it, certificates it rejects are skipped.

    Returns None when m < 2.  Every witness choice and every flag assignment
    handed to ``accept`` counts as a node; past ``budget`` nodes
    :class:`SearchBudgetExceeded` is raised.
    """
    m = d.m
    if m < 2:
        return None
    o = tuple(range(m)) if order is None else tuple(order)
    if sorted(o) != list(range(m)):
        raise DimensionMismatch(f"order {o} is not a permutation of 0..{m - 1}")
    pairs = _pairs(m)
    index = {p: k for k, p in enumerate(pairs)}
    domains = [sorted(d.intersections[o[i]][o[j]]) for i, j in pairs]
    h: dict[tuple[int, int], int] = {}
    uf = _ParityUnion(len(pairs))
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"awning search exceeded {budget} nodes")

    def constrain(j: int, s: int) -> bool:
        x = h[(j, s)]
        me = index[(j, s)]
        for i in range(j):
            if h[(i, j)] == x and not uf.relate(me, index[(i, j)], 1):  # cases (a)/(b)
                return False
            if h[(i, s)] == x and not uf.relate(me, index[(i, s)], 0):  # cases (c)/(d)
                return False
        return True

    def flag_assignments():
        roots: list[int] = []
        rel = []
        for k in range(len(pairs)):
            r, p = uf.find(k)
            if r not in roots:
                roots.append(r)
            rel.append((roots.index(r), p))
        # the first member of each component carries the component's choice
        first_parity = {}
        for c, p in rel:
            first_parity.setdefault(c, p)
        for choice in itertools.product((0, 1), repeat=len(roots)):
            yield {pairs[k]: "AB"[choice[c] ^ p ^ first_parity[c]] for k, (c, p) in enumerate(rel)}

    def rec(p: int) -> Optional[AwningCertificate]:
        if p == len(pairs):
            for side in flag_assignments():
                cert = AwningCertificate(o, dict(h), side)
                if accept is None:
                    return cert
                tick()
                if accept(cert):
                    return cert
            return None
        key = pairs[p]
        for x in domains[p]:
            tick()
            h[key] = x
            mark = uf.mark()
            if constrain(*key):
                found = rec(p + 1)
                if found is not None:
                    return found
            uf.rollback(mark)
        h.pop(key, None)
        return None

    return rec(0)


@dataclass
class OrderProbe:
    applicable: bool
    orders_tried: list[tuple[int, ...]] = field(default_factory=list)
    found_for: list[tuple[int, ...]] = field(default_factory=list)
    not_found_for: list[tuple[int, ...]] = field(default_factory=list)
    unknown_for: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def order_invariant(self) -> Optional[bool]:
        if not self.applicable or self.unknown_for:
            return None
        return not (self.found_for and self.not_found_for)

    def to_json(self) -> dict:
        return {"applicable": self.applicable,
                "orders_tried": len(self.orders_tried),
                "found": len(self.found_for), "not_found": len(self.not_found_for),
                "unknown": len(self.unknown_for),
                "order_invariant": self.order_invariant}


def probe_orders(m: int, max_orders: int, seed: int = 0) -> list[tuple[int, ...]]:
    """All permutations when m! <= max_orders, else a seeded sample starting
    with the identity order."""
    if m <= 8 and math.factorial(m) <= max_orders:
        return list(itertools.permutations(range(m)))
    rng = random.Random(seed)
    out = [tuple(range(m))]
    seen = set(out)
    while len(out) < max_orders:
        p = list(range(m))
        rng.shuffle(p)
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def awning_order_probe(d: CyclicDecomposition, max_orders: int = 720,
                       budget: int = DEFAULT_AWNING_BUDGET,
                       accept: Optional[Callable[[AwningCertificate], bool]] = None,
                       ) -> OrderProbe:
    if d.m < 2:
        return OrderProbe(applicable=False)
    probe = OrderProbe(applicable=True)
    for o in probe_orders(d.m, max_orders):
        probe.orders_tried.append(o)
        try:
            cert = find_awning(d, o, budget, accept)
        except SearchBudgetExceeded:
            probe.unknown_for.append(o)
            continue
        (probe.found_for if cert is not None else probe.not_found_for).append(o)
    return probe
