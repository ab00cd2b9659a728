"""Edge colorings built from the structural constructions.

Each strategy paints named edge classes in a fixed precedence (the first
class to claim an edge keeps it) and fills the remaining edges with a
default color.  :func:`build_strategy_coloring` checks the strategy's
hypothesis first and raises :class:`HypothesisNotMet` otherwise.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .awning import AwningCertificate, verify_awning
from .cyclic import CyclicDecomposition, IcsReport, distinct_witnesses, ics_report
from .graphs import SimpleGraph
from .rainbow import EdgeColoring, is_rainbow_connected

STRATEGIES = ("TWO_MAX", "STAR_ICN1", "STAR_ICN3", "ICN3_STAR", "INVMAX_EQ_MAX",
              "DISTINCT_WITNESS", "AWNING", "INVMAX_GE3")
READINGS = ("literal", "swapped")


class HypothesisNotMet(ValueError):
    def __init__(self, strategy: str, reason: str):
        super().__init__(f"{strategy}: {reason}")
        self.strategy = strategy
        self.reason = reason


class _Painter:
    def __init__(self, g: SimpleGraph):
        self.g = g
        self.colors = [0] * g.m

    def paint(self, u: int, v: int, c: int) -> None:
        if u == v or not self.g.has_edge(u, v):
            return
        e = self.g.eid(u, v)
        if self.colors[e] == 0:
            self.colors[e] = c

    def paint_clique(self, members: Iterable[int], c: int, skip: Optional[int] = None) -> None:
        s = sorted(members)
        for a in range(len(s)):
            for b in range(a + 1, len(s)):
                if skip is not None and skip in (s[a], s[b]):
                    continue
                self.paint(s[a], s[b], c)

    def done(self, k: int, default: int) -> EdgeColoring:
        return EdgeColoring(k, tuple(c or default for c in self.colors))


def _two_max(d, g, rep, aux):
    p = _Painter(g)
    for i in range(2):
        p.paint_clique(d.members(i), i + 1)
    return p.done(2, 1)


def _star_icn1(d, g, rep, aux):
    e = d.group.identity
    a = rep.ics_indices[0]
    b, c = [i for i in range(3) if i != a]
    Xa, Xb, Xc = d.members(a), d.members(b), d.members(c)
    shared = Xb & Xc
    p = _Painter(g)
    # E_1: inside <x_a>, and inside <x_b> away from e
    p.paint_clique(Xa, 1)
    p.paint_clique(Xb, 1, skip=e)
    # E_2: e to <x_b> u <x_c>, and <x_c> \ <x_b> to the shared non-identity part
    for y in sorted(Xb | Xc):
        p.paint(e, y, 2)
    for u in sorted(Xc - Xb):
        for w in sorted(shared - {e}):
            p.paint(u, w, 2)
    return p.done(2, 1)


def _hub_three(d, g, indices):
    # generator spokes 1, other spokes 2, remaining subgroup edges 3
    e = d.group.identity
    p = _Painter(g)
    for i in indices:
        p.paint(d.generator(i), e, 1)
    for i in indices:
        for y in sorted(d.members(i) - {d.generator(i), e}):
            p.paint(e, y, 2)
    for i in indices:
        p.paint_clique(d.members(i), 3)
    return p


def _per_subgroup(d, g, k):
    p = _Painter(g)
    for i in range(d.m):
        p.paint_clique(d.members(i), i + 1)
    return p.done(k, 1)


def _star_icn3(d, g, rep, aux):
    if rep.invmax == d.m:
        return _per_subgroup(d, g, 3)
    return _hub_three(d, g, range(d.m)).done(3, 3)


def _icn3_star(d, g, rep, aux):
    return _hub_three(d, g, range(d.m)).done(3, 3)


def _invmax_eq_max(d, g, rep, aux):
    return _per_subgroup(d, g, d.m)


def _invmax_ge3(d, g, rep, aux):
    e = d.group.identity
    inv = set(rep.invmax_indices)
    p = _hub_three(d, g, [i for i in range(d.m) if i not in inv])
    for c, i in enumerate(rep.invmax_indices, start=1):
        p.paint(d.generator(i), e, c)
    return p.done(rep.invmax, 3)


def _distinct_witness(d, g, rep, aux):
    h = aux
    p = _Painter(g)
    for (i, j), x in sorted(h.items()):
        Xi, Xj = d.members(i), d.members(j)
        for a in sorted(Xi - Xj):
            p.paint(a, x, 1)
        for b in sorted(Xj - Xi):
            p.paint(b, x, 2)
    return p.done(2, 1)


def _awning(d, g, rep, aux):
    cert, reading = aux
    o = cert.order
    p = _Painter(g)
    for r in range(cert.m):
        for s in range(r + 1, cert.m):
            x = cert.witnesses[(r, s)]
            Xr, Xs = d.members(o[r]), d.members(o[s])
            flip = reading == "swapped" and cert.side[(r, s)] == "B"
            ca, cb = (2, 1) if flip else (1, 2)
            for a in sorted(Xr - Xs):
                p.paint(a, x, ca)
            for b in sorted(Xs - Xr):
                p.paint(b, x, cb)
    return p.done(2, 1)


_BUILDERS = {
    "TWO_MAX": _two_max,
    "STAR_ICN1": _star_icn1,
    "STAR_ICN3": _star_icn3,
    "ICN3_STAR": _icn3_star,
    "INVMAX_EQ_MAX": _invmax_eq_max,
    "DISTINCT_WITNESS": _distinct_witness,
    "AWNING": _awning,
    "INVMAX_GE3": _invmax_ge3,
}


def check_hypothesis(strategy: str, d: CyclicDecomposition, rep: IcsReport, aux=None) -> Optional[str]:
    """None when the strategy applies, else the reason it does not."""
    m, icn = d.m, rep.icn
    if strategy == "TWO_MAX":
        return None if m == 2 else f"needs m=2, got m={m}"
    if strategy == "STAR_ICN1":
        return None if (m, icn) == (3, 1) else f"needs m=3 and icn=1, got m={m}, icn={icn}"
    if strategy == "STAR_ICN3":
        return None if (m, icn) == (3, 3) else f"needs m=3 and icn=3, got m={m}, icn={icn}"
    if strategy == "ICN3_STAR":
        if icn < 3 or rep.invmax:
            return f"needs icn>=3 and no maximal involutions, got icn={icn}, |InvMax|={rep.invmax}"
        return None
    if strategy == "INVMAX_EQ_MAX":
        return None if rep.invmax == m else f"needs InvMax=Max, got |InvMax|={rep.invmax}, m={m}"
    if strategy == "INVMAX_GE3":
        return None if rep.invmax >= 3 else f"needs |InvMax|>=3, got {rep.invmax}"
    if strategy == "DISTINCT_WITNESS":
        if m < 2:
            return f"needs m>=2, got m={m}"
        h = aux if aux is not None else distinct_witnesses(d)
        if h is None:
            return "no pairwise-distinct non-identity witnesses exist"
        e = d.group.identity
        vals = list(h.values())
        if len(set(vals)) != len(vals) or e in vals or any(
                x not in d.intersections[i][j] for (i, j), x in h.items()):
            return "supplied witnesses are not distinct non-identity intersection elements"
        return None
    if strategy == "AWNING":
        if m < 2:
            return f"needs m>=2, got m={m}"
        if aux is None:
            return "needs an awning certificate"
        cert = aux[0] if isinstance(aux, tuple) else aux
        ok, why = verify_awning(d, cert)
        return None if ok else f"certificate fails {why}"
    raise ValueError(f"unknown strategy {strategy!r}")


def build_strategy_coloring(strategy: str, d: CyclicDecomposition, g: SimpleGraph,
                         aux=None, reading: str = "literal",
                         rep: Optional[IcsReport] = None) -> EdgeColoring:
    """Coloring of the enhanced power graph ``g`` for one strategy.

    ``aux`` is the witness dict for DISTINCT_WITNESS (computed when omitted)
    and the :class:`AwningCertificate` for AWNING; ``reading`` picks how the
    B-side rows of an awning are colored.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    rep = rep or ics_report(d)
    if strategy == "DISTINCT_WITNESS" and aux is None:
        aux = distinct_witnesses(d)
    why = check_hypothesis(strategy, d, rep, aux)
    if why is not None:
        raise HypothesisNotMet(strategy, why)
    if strategy == "AWNING":
        aux = (aux, reading)
    return _BUILDERS[strategy](d, g, rep, aux)


def applicable_strategies(d: CyclicDecomposition, rep: IcsReport) -> list[str]:
    """Strategies whose hypothesis holds without extra input (AWNING excluded)."""
    return [s for s in STRATEGIES if s != "AWNING" and check_hypothesis(s, d, rep) is None]


def awning_colorings(d: CyclicDecomposition, g: SimpleGraph, cert: AwningCertificate,
                     rep: Optional[IcsReport] = None) -> Iterator[tuple[str, EdgeColoring]]:
    for reading in READINGS:
        yield reading, build_strategy_coloring("AWNING", d, g, cert, reading, rep)


def realizes_two_coloring(d: CyclicDecomposition, g: SimpleGraph):
    """Predicate for :func:`find_awning`: the certificate's coloring is
    rainbow connected under at least one B-row reading."""
    rep = ics_report(d)
    cache: dict = {}

    def accept(cert: AwningCertificate) -> bool:
        for reading in READINGS:
            col = _awning(d, g, rep, (cert, reading))
            key = col.assignment
            if key not in cache:
                cache[key] = is_rainbow_connected(g, col)[0]
            if cache[key]:
                return True
        return False

    return accept
