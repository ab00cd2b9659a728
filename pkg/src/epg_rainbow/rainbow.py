"""Rainbow connectivity: verification, lower bounds and exact search.

A coloring assigns colors ``1..k`` to the edges of a :class:`SimpleGraph` in
edge-id order.  :func:`rc_exact` looks for the smallest ``k`` admitting a
rainbow-connected coloring by backtracking over canonical colorings.
"""

from __future__ import annotations

import itertools
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .graphs import SimpleGraph, graph_metrics

DEFAULT_RC_BUDGET = 50_000_000
EXHAUSTIVE_EDGE_GATE = 22


def default_budget() -> int:
    env = os.environ.get("EPG_RAINBOW_BUDGET")
    return int(env) if env else DEFAULT_RC_BUDGET


@dataclass(frozen=True)
class EdgeColoring:
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.assignment and (min(self.assignment) < 1 or max(self.assignment) > self.k):
            raise ValueError(f"colors must lie in 1..{self.k}")

    def to_json(self, g: SimpleGraph) -> dict:
        return {"k": self.k, "edges": [{"u": u, "v": v, "color": c}
                                       for (u, v), c in zip(g.edges, self.assignment)]}

    @classmethod
    def from_json(cls, g: SimpleGraph, obj: dict) -> "EdgeColoring":
        colors = [0] * g.m
        for rec in obj["edges"]:
            colors[g.eid(rec["u"], rec["v"])] = rec["color"]
        if 0 in colors:
            raise ValueError("coloring JSON does not cover every edge")
        return cls(obj["k"], tuple(colors))


def _reach(g: SimpleGraph, c: EdgeColoring, u: int, parents: bool = False):
    """BFS over (vertex, used-color mask) states from ``u``.

    A walk with pairwise-distinct edge colors shortcuts to a rainbow path, so
    vertex revisits need not be tracked.
    """
    eid = g.edge_id
    start = (u, 0)
    seen = {start: None} if parents else {start}
    reached = {u}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, mask = state
        for y in g.adj[x]:
            bit = 1 << c.assignment[eid[(x, y) if x < y else (y, x)]]
            if mask & bit:
                continue
            nxt = (y, mask | bit)
            if nxt in seen:
                continue
            if parents:
                seen[nxt] = state
            else:
                seen.add(nxt)
            reached.add(y)
            queue.append(nxt)
    return (reached, seen) if parents else reached


def is_rainbow_connected(g: SimpleGraph, c: EdgeColoring) -> tuple[bool, Optional[tuple[int, int]]]:
    """Return ``(True, None)`` or ``(False, first failing pair)``."""
    if len(c.assignment) != g.m:
        raise ValueError(f"coloring has {len(c.assignment)} entries, graph has {g.m} edges")
    for u in range(g.n):
        reached = _reach(g, c, u)
        for v in range(u + 1, g.n):
            if v not in reached:
                return False, (u, v)
    return True, None


def rainbow_path(g: SimpleGraph, c: EdgeColoring, u: int, v: int) -> Optional[list[int]]:
    """A shortest rainbow path from u to v as a vertex list, or None."""
    if u == v:
        return [u]
    _, parent = _reach(g, c, u, parents=True)
    ends = [s for s in parent if s[0] == v]
    if not ends:
        return None
    best = min(ends, key=lambda s: (bin(s[1]).count("1"), s[1]))
    path = []
    state = best
    while state is not None:
        path.append(state[0])
        state = parent[state]
    return path[::-1]


def rc_lower_bound(g: SimpleGraph, icn_hint: Optional[int] = None,
                   invmax_hint: Optional[int] = None) -> tuple[int, str]:
    """Largest of the structural lower bounds, with the name of its source."""
    met = graph_metrics(g)
    if met.is_complete:
        return 1, "COMPLETE"
    value, source = max(1, met.diameter), "DIAMETER"
    if met.bridge_count > value:
        value, source = met.bridge_count, "BRIDGES"
    if icn_hint is not None and icn_hint >= 3 and value < 3:
        value, source = 3, "ICS_TRIPLE"
    if invmax_hint is not None and invmax_hint > value:
        value, source = invmax_hint, "INVMAX"
    return value, source


def spanning_tree_coloring(g: SimpleGraph) -> EdgeColoring:
    """BFS-tree edges get distinct colors, all other edges color 1."""
    colors = [0] * g.m
    nxt = 1
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                colors[g.eid(x, y)] = nxt
                nxt += 1
                queue.append(y)
    k = max(1, nxt - 1)
    return EdgeColoring(k, tuple(c or 1 for c in colors))


@dataclass
class SearchStats:
    nodes: int = 0
    colorings_tested: int = 0
    elapsed: float = 0.0
    levels: dict[int, str] = field(default_factory=dict)


@dataclass
class RcResult:
    kind: str  # "EXACT" | "INTERVAL"
    lb: int
    ub: int
    lower_bound_source: str
    certificate: Optional[EdgeColoring] = None
    certificate_source: str = ""
    stats: SearchStats = field(default_factory=SearchStats)
    note: str = ""

    @property
    def value(self) -> Optional[int]:
        return self.lb if self.kind == "EXACT" else None

    def to_json(self, g: Optional[SimpleGraph] = None, timing: bool = False) -> dict:
        out = {"kind": self.kind}
        if self.kind == "EXACT":
            out["value"] = self.lb
        else:
            out["lb"], out["ub"] = self.lb, self.ub
        out["lower_bound_source"] = self.lower_bound_source
        out["certificate_source"] = self.certificate_source
        if self.certificate is not None:
            out["certificate"] = (self.certificate.to_json(g) if g is not None
                                  else {"k": self.certificate.k,
                                        "assignment": list(self.certificate.assignment)})
        stats = {"nodes": self.stats.nodes, "colorings_tested": self.stats.colorings_tested,
                 "levels": {str(k): v for k, v in sorted(self.stats.levels.items())}}
        if timing:
            stats["elapsed"] = round(self.stats.elapsed, 4)
        out["search_stats"] = stats
        if self.note:
            out["note"] = self.note
        return out


class BudgetExceeded(Exception):
    pass


def _short_paths(g: SimpleGraph, k: int) -> list[tuple[tuple[int, int], list[tuple[int, ...]]]]:
    """For every non-adjacent pair, all simple paths with 2..k edges (as edge ids)."""
    out = []
    eid = g.edge_id
    for u in range(g.n):
        found: dict[int, list[tuple[int, ...]]] = {}
        # DFS from u over simple paths of length <= k
        stack = [(u, (u,), ())]
        while stack:
            x, verts, es = stack.pop()
            for y in g.adj[x]:
                if y in verts:
                    continue
                ne = es + (eid[(x, y) if x < y else (y, x)],)
                if y > u and len(ne) >= 2:
                    found.setdefault(y, []).append(ne)
                if len(ne) < k:
                    stack.append((y, verts + (y,), ne))
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                out.append(((u, v), sorted(found.get(v, []))))
    return out


def _search_order(n_edges: int, paths: list[tuple[int, ...]], on_edge: list[list[int]]) -> list[int]:
    """Static edge order that closes short paths as early as possible.

    Greedy: next edge is the one completing the most paths, then touching the
    most partially placed paths, then lowest id.
    """
    placed = [False] * n_edges
    missing = [len(p) for p in paths]
    order = []
    for _ in range(n_edges):
        best, best_key = -1, None
        for e in range(n_edges):
            if placed[e]:
                continue
            closes = touches = 0
            for q in on_edge[e]:
                if missing[q] == 1:
                    closes += 1
                elif missing[q] < len(paths[q]):
                    touches += 1
            key = (closes, touches, -e)
            if best_key is None or key > best_key:
                best, best_key = e, key
        placed[best] = True
        order.append(best)
        for q in on_edge[best]:
            missing[q] -= 1
    return order


def search_k(g: SimpleGraph, k: int, budget: int, stats: Optional[SearchStats] = None
             ) -> Optional[EdgeColoring]:
    """Find a rainbow-connected coloring with at most k colors, or None.

    Edges are colored in a fixed order; the first gets color 1 and a new color
    is only ever the next unused one, so each color permutation class is
    visited once.  Every non-adjacent pair tracks how many of its short paths
    can still be rainbow: zero prunes the branch, and a single survivor
    restricts the colors left for its uncolored edges.  Raises
    :class:`BudgetExceeded` after ``budget`` nodes.
    """
    stats = stats if stats is not None else SearchStats()
    if g.m == 0:
        return EdgeColoring(1, ()) if g.n <= 1 else None
    pair_paths = _short_paths(g, k)
    if any(not paths for _, paths in pair_paths):
        return None

    paths: list[tuple[int, ...]] = []
    owner: list[int] = []
    alive: list[int] = []
    members: list[list[int]] = []
    for p_idx, (_, plist) in enumerate(pair_paths):
        alive.append(len(plist))
        members.append([])
        for p in plist:
            members[p_idx].append(len(paths))
            paths.append(p)
            owner.append(p_idx)
    on_edge: list[list[int]] = [[] for _ in range(g.m)]
    for q, p in enumerate(paths):
        for e in p:
            on_edge[e].append(q)
    order = _search_order(g.m, paths, on_edge)

    full = ((1 << (k + 1)) - 1) & ~1
    domain = [full] * g.m
    mask = [0] * len(paths)
    dead = [False] * len(paths)
    colors = [0] * g.m
    n_edges = g.m
    nodes = 0

    def restrict(o: int, trail: list) -> bool:
        # the last live path of pair o must stay rainbow
        q = next(q for q in members[o] if not dead[q])
        forbid = mask[q]
        for f in paths[q]:
            if colors[f] == 0 and domain[f] & forbid:
                trail.append((f, domain[f], 1))
                domain[f] &= ~forbid
                if domain[f] == 0:
                    return False
        return True

    def assign(e: int, c: int, trail: list) -> bool:
        bit = 1 << c
        single = []
        for q in on_edge[e]:
            if dead[q]:
                continue
            if mask[q] & bit:
                dead[q] = True
                trail.append((q, -1, 0))
                o = owner[q]
                alive[o] -= 1
                if alive[o] == 0:
                    return False
                if alive[o] == 1:
                    single.append(o)
            else:
                trail.append((q, mask[q], 0))
                mask[q] |= bit
                if alive[owner[q]] == 1:
                    single.append(owner[q])
        return all(restrict(o, trail) for o in single)

    def undo(trail: list) -> None:
        for q, old, kind in reversed(trail):
            if kind == 1:
                domain[q] = old
            elif old == -1:
                dead[q] = False
                alive[owner[q]] += 1
            else:
                mask[q] = old

    def rec(pos: int, used: int) -> bool:
        nonlocal nodes
        if pos == n_edges:
            stats.colorings_tested += 1
            return True
        e = order[pos]
        dom = domain[e]
        for c in range(1, min(k, used + 1) + 1):
            if not dom >> c & 1:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            colors[e] = c
            trail: list = []
            if assign(e, c, trail) and rec(pos + 1, max(used, c)):
                return True
            undo(trail)
            colors[e] = 0
        return False

    try:
        found = rec(0, 0)
    finally:
        stats.nodes += nodes
    if not found:
        return None
    return EdgeColoring(k, tuple(colors))


def rc_exact(g: SimpleGraph, budget: Optional[int] = None,
             candidates: Iterable[tuple[str, EdgeColoring]] = (),
             edge_gate: int = EXHAUSTIVE_EDGE_GATE,
             override_gate: bool = False) -> RcResult:
    """Rainbow connection number by bounded exhaustive search.

    ``candidates`` are ``(source, coloring)`` upper-bound certificates; each is
    re-verified before use.  Search is skipped once the lower bound meets the
    best verified certificate.  The lower bound uses only graph structure.
    """
    budget = default_budget() if budget is None else budget
    t0 = time.perf_counter()
    stats = SearchStats()
    lb, src = rc_lower_bound(g)
    if g.is_complete():
        cert = EdgeColoring(1, (1,) * g.m)
        stats.elapsed = time.perf_counter() - t0
        return RcResult("EXACT", 1, 1, "COMPLETE", cert, "complete", stats)

    best, best_src = None, ""
    for name, col in candidates:
        if len(col.assignment) != g.m:
            continue
        used = max(col.assignment, default=1)
        if best is not None and used >= best.k:
            continue
        if is_rainbow_connected(g, col)[0]:
            best, best_src = EdgeColoring(used, col.assignment), name
    tree = spanning_tree_coloring(g)
    if best is None or tree.k < best.k:
        best, best_src = tree, "spanning_tree"
    ub = best.k

    def finish(kind, lo, hi, cert, cert_src, note=""):
        stats.elapsed = time.perf_counter() - t0
        return RcResult(kind, lo, hi, src, cert, cert_src, stats, note)

    for k in range(lb, ub):
        if not (override_gate or k <= 2 or g.m <= edge_gate):
            stats.levels[k] = "gated"
            return finish("INTERVAL", k, ub, best, best_src,
                          f"exhaustive search gated at k={k} (|E|={g.m} > {edge_gate})")
        try:
            col = search_k(g, k, budget, stats)
        except BudgetExceeded:
            stats.levels[k] = "budget"
            return finish("INTERVAL", k, ub, best, best_src, f"search budget exhausted at k={k}")
        if col is not None:
            stats.levels[k] = "found"
            assert is_rainbow_connected(g, col)[0]
            return finish("EXACT", k, k, col, "search")
        stats.levels[k] = "none"
    return finish("EXACT", ub, ub, best, best_src)


# ---------------------------------------------------------------------------
# Reference oracle without symmetry breaking

def rc_naive(g: SimpleGraph, max_k: Optional[int] = None) -> int:
    """Smallest k such that one of the k**|E| colorings is rainbow connected.

    Every coloring is enumerated (no canonical forms) and checked against all
    simple paths from networkx, vectorized over colorings with numpy.  Only
    meant for graphs with a handful of edges.
    """
    import networkx as nx

    if g.n <= 1:
        return 1
    nxg = g.to_networkx()
    if not nx.is_connected(nxg):
        raise ValueError("graph is not connected")
    pair_paths = []
    for u, v in itertools.combinations(range(g.n), 2):
        if g.has_edge(u, v):
            continue
        pair_paths.append([[g.eid(a, b) for a, b in zip(p, p[1:])]
                           for p in nx.all_simple_paths(nxg, u, v)])
    max_k = max_k or max(g.m, 1)
    for k in range(1, max_k + 1):
        cols = np.array(list(itertools.product(range(k), repeat=g.m)), dtype=np.int8)
        cols = cols.reshape(-1, g.m)
        ok = np.ones(len(cols), dtype=bool)
        for plist in pair_paths:
            any_rainbow = np.zeros(len(cols), dtype=bool)
            for p in plist:
                if len(p) > k:
                    continue
                rb = np.ones(len(cols), dtype=bool)
                for a, b in itertools.combinations(p, 2):
                    rb &= cols[:, a] != cols[:, b]
                any_rainbow |= rb
            ok &= any_rainbow
            if not ok.any():
                break
        if ok.any():
            return k
    raise ValueError("no rainbow coloring found up to max_k")
