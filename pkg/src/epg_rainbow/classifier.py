"""Rule-table prediction of rc for enhanced power graphs, checked against the
exact oracle.

Rules are tried in order R1..R8; the first whose hypothesis holds fires.
Awning-dependent rules (R2, R5) use the *realized* awning verdict: an awning
certificate counts only when its two-coloring is rainbow connected.  The
literal verdict (witness and side-flag rules alone) is kept alongside for
the awning probes.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Sequence

from .awning import (DEFAULT_AWNING_BUDGET, AwningCertificate, SearchBudgetExceeded,
                     awning_order_probe, find_awning)
from .colorings import (READINGS, applicable_strategies, build_strategy_coloring,
                        realizes_two_coloring)
from .cyclic import CyclicDecomposition, IcsReport, ics_report, maximal_cyclic_subgroups
from .graphs import SimpleGraph, enhanced_power_graph, power_graph
from .groups import DEFAULT_SIZE_CAP, FiniteGroup, GroupSpec, construct, is_cyclic, serialize
from .rainbow import EXHAUSTIVE_EDGE_GATE, EdgeColoring, RcResult, is_rainbow_connected, rc_exact

FOUND, NONE, UNKNOWN, NOT_APPLICABLE = "FOUND", "NONE", "UNKNOWN", "NOT_APPLICABLE"
MATCH, MISMATCH, INCONCLUSIVE = "MATCH", "MISMATCH", "INCONCLUSIVE"
RULES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "FALLBACK")


@dataclass
class AwningVerdict:
    status: str
    certificate: Optional[AwningCertificate] = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def awning_verdict(d: CyclicDecomposition, budget: int = DEFAULT_AWNING_BUDGET,
                   g: Optional[SimpleGraph] = None) -> AwningVerdict:
    """Literal verdict, or realized verdict when the graph ``g`` is supplied."""
    if d.m < 2:
        return AwningVerdict(NOT_APPLICABLE)
    accept = realizes_two_coloring(d, g) if g is not None else None
    try:
        cert = find_awning(d, budget=budget, accept=accept)
    except SearchBudgetExceeded:
        return AwningVerdict(UNKNOWN)
    return AwningVerdict(FOUND, cert) if cert is not None else AwningVerdict(NONE)


@dataclass(frozen=True)
class Prediction:
    verdict: str  # VALUE | UNCOVERED | SUSPECT
    value: Optional[int]
    rule_id: str
    inputs: dict
    note: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "value": self.value, "rule": self.rule_id,
               "inputs": self.inputs}
        if self.note:
            out["note"] = self.note
        return out


def rule_holds(rule: str, inputs: dict) -> bool:
    """Whether ``rule``'s hypothesis is satisfied by an input snapshot."""
    m, icn, inv = inputs["m"], inputs["icn"], inputs["invmax"]
    awning, cyclic = inputs["awning"], inputs["is_cyclic"]
    return {
        "R1": cyclic,
        "R2": awning == FOUND and not cyclic,
        "R3": m == 2,
        "R4": inv == m,
        "R5": icn in (0, 1) and m >= 3 and awning == NONE,
        "R6": icn == 2 and m >= 4,
        "R7": icn >= 3 and inv >= 3,
        "R8": icn >= 3 and inv < 3,
        "FALLBACK": True,
    }[rule]


def classify(G: FiniteGroup, d: CyclicDecomposition, rep: IcsReport, awning: str) -> Prediction:
    inputs = {"m": d.m, "icn": rep.icn, "invmax": rep.invmax, "awning": awning,
              "is_cyclic": is_cyclic(G) is not None}
    value_of = {"R1": 1, "R2": 2, "R3": 2, "R4": d.m, "R5": 3, "R6": 3, "R7": rep.invmax}
    for rule in RULES:
        if not rule_holds(rule, inputs):
            continue
        if rule == "R8":
            return Prediction("SUSPECT", 3, rule, inputs,
                              f"literal value |InvMax|={rep.invmax} conflicts with lower bound 3 "
                              f"for icn>=3")
        if rule == "FALLBACK":
            return Prediction("UNCOVERED", None, rule, inputs)
        return Prediction("VALUE", value_of[rule], rule, inputs)
    raise AssertionError("unreachable")


def agreement(pred: Prediction, oracle: RcResult) -> str:
    if pred.verdict != "VALUE" or oracle.kind != "EXACT":
        return INCONCLUSIVE
    return MATCH if oracle.value == pred.value else MISMATCH


@dataclass
class ValidationRecord:
    spec: str
    name: str
    order: int
    invariants: dict
    awning_literal: AwningVerdict
    awning: AwningVerdict
    prediction: Prediction
    oracle: RcResult
    agreement: str
    strategy_colorings: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)
    probes: dict = field(default_factory=dict)
    power_oracle: Optional[RcResult] = None
    order_probe: Optional[dict] = None
    bundle: Optional[dict] = None
    edges: tuple = ()
    power_edges: tuple = ()

    def to_json(self, timing: bool = False) -> dict:
        g = SimpleGraph(self.order, self.edges)
        out = {
            "spec": self.spec, "name": self.name, "order": self.order,
            "invariants": self.invariants,
            "awning_literal": self.awning_literal.to_json(),
            "awning": self.awning.to_json(),
            "prediction": self.prediction.to_json(),
            "oracle": self.oracle.to_json(g, timing),
            "agreement": self.agreement,
            "strategy_colorings": self.strategy_colorings,
            "discrepancies": self.discrepancies,
            "probes": self.probes,
        }
        if self.power_oracle is not None:
            pg = SimpleGraph(self.order, self.power_edges)
            out["power_oracle"] = self.power_oracle.to_json(pg, timing)
        if self.order_probe is not None:
            out["order_probe"] = self.order_probe
        if self.bundle is not None:
            out["bundle"] = self.bundle
        return out


def invariant_summary(G: FiniteGroup, d: CyclicDecomposition, rep: IcsReport) -> dict:
    return {
        "m": d.m,
        "generators": [G.labels[g] for g in d.generators()],
        "subgroup_sizes": [len(s) for _, s in d.subgroups],
        "intersection_sizes": [[len(x) for x in row] for row in d.intersections],
        "icn": rep.icn,
        "ics": [G.labels[d.generator(i)] for i in rep.ics_indices],
        "invmax": rep.invmax,
        "is_cyclic": is_cyclic(G) is not None,
    }


def awning_probes(rep: IcsReport, d: CyclicDecomposition, literal: str,
                  realized: str, is_cyc: bool, oracle: RcResult) -> dict:
    """Empirical checks of awning claims against the oracle.  Reported, not asserted."""
    if oracle.kind != "EXACT":
        return {"skipped": "oracle returned an interval"}
    rc, icn, m = oracle.value, rep.icn, d.m
    out = {}
    if literal == FOUND and m >= 3:
        out["cor1_awning_m3_implies_icn_le_1"] = icn <= 1
    if m == 2:
        out["cor2_m2_icn_0_or_2_with_awning"] = icn in (0, 2) and literal == FOUND
    if literal == FOUND:
        out["cor15_awning_implies_icn_1"] = icn == 1
    if not is_cyc and literal in (FOUND, NONE):
        out["literal_awning_iff_rc2"] = (literal == FOUND) == (rc == 2)
    if not is_cyc and realized in (FOUND, NONE):
        out["realized_awning_iff_rc2"] = (realized == FOUND) == (rc == 2)
    return out


def _check_coloring(g: SimpleGraph, col: EdgeColoring) -> dict:
    ok, pair = is_rainbow_connected(g, col)
    return {"k": col.k, "verified": ok, "failing_pair": list(pair) if pair else None}


def cross_validate(group: FiniteGroup | GroupSpec | str,
                   rc_budget: Optional[int] = None,
                   awning_budget: int = DEFAULT_AWNING_BUDGET,
                   include_power: bool = False,
                   probe_orders: int = 0,
                   edge_gate: int = EXHAUSTIVE_EDGE_GATE,
                   override_gate: bool = False,
                   size_cap: int = DEFAULT_SIZE_CAP) -> ValidationRecord:
    """Full pipeline for one group: invariants, awnings, prediction, oracle."""
    if isinstance(group, FiniteGroup):
        G, spec = group, group.name
    else:
        G, spec = construct(group, size_cap), str(group)
    d = maximal_cyclic_subgroups(G)
    rep = ics_report(d)
    g = enhanced_power_graph(G, d)
    is_cyc = is_cyclic(G) is not None

    literal = awning_verdict(d, awning_budget)
    realized = awning_verdict(d, awning_budget, g)
    pred = classify(G, d, rep, realized.status)

    built: dict = {}
    discrepancies: list = []
    candidates: list[tuple[str, EdgeColoring]] = []

    def record(name: str, col: EdgeColoring, extra: Optional[dict] = None):
        res = _check_coloring(g, col)
        built[name] = res
        if res["verified"]:
            candidates.append((name, col))
        else:
            discrepancies.append({"strategy": name, "failing_pair": res["failing_pair"],
                                  "coloring": col.to_json(g), **(extra or {})})

    for strat in applicable_strategies(d, rep):
        record(strat, build_strategy_coloring(strat, d, g, rep=rep))
    if literal.certificate is not None:
        cols = {r: build_strategy_coloring("AWNING", d, g, literal.certificate, r, rep)
                for r in READINGS}
        checks = {r: _check_coloring(g, c) for r, c in cols.items()}
        built["AWNING"] = {"k": 2, "verified": any(c["verified"] for c in checks.values()),
                           "readings": checks}
        good = [r for r in READINGS if checks[r]["verified"]]
        if good:
            candidates.append(("AWNING", cols[good[0]]))
        else:
            discrepancies.append({"strategy": "AWNING", "readings": checks,
                                  "certificate": literal.certificate.to_json()})
    if realized.certificate is not None:
        for r in READINGS:
            col = build_strategy_coloring("AWNING", d, g, realized.certificate, r, rep)
            if is_rainbow_connected(g, col)[0]:
                built["AWNING_REALIZED"] = {"k": 2, "verified": True, "reading": r}
                candidates.append(("AWNING_REALIZED", col))
                break

    oracle = rc_exact(g, rc_budget, candidates, edge_gate, override_gate)
    agree = agreement(pred, oracle)
    probes = awning_probes(rep, d, literal.status, realized.status, is_cyc, oracle)

    power, power_edges = None, ()
    if include_power:
        pg = power_graph(G)
        power_edges = pg.edges
        power = rc_exact(pg, rc_budget, (), edge_gate, override_gate)
        if oracle.kind == "EXACT" and power.kind == "EXACT":
            probes["rc_enhanced_le_rc_power"] = oracle.value <= power.value

    order_probe = None
    if probe_orders and d.m >= 2:
        order_probe = {
            "literal": awning_order_probe(d, probe_orders, awning_budget).to_json(),
            "realized": awning_order_probe(d, probe_orders, awning_budget,
                                           realizes_two_coloring(d, g)).to_json()}

    rec = ValidationRecord(
        spec=spec, name=G.name, order=G.order,
        invariants=invariant_summary(G, d, rep),
        awning_literal=literal, awning=realized, prediction=pred, oracle=oracle,
        agreement=agree, strategy_colorings=built, discrepancies=discrepancies,
        probes=probes, power_oracle=power, order_probe=order_probe, edges=g.edges,
        power_edges=power_edges)
    if agree == MISMATCH or discrepancies:
        rec.bundle = {"cayley": serialize(G),
                      "oracle_certificate": (oracle.certificate.to_json(g)
                                             if oracle.certificate else None),
                      "awning_literal": literal.to_json(), "awning": realized.to_json()}
    return rec


# ---------------------------------------------------------------------------
# Sweeps

def _short(status: str) -> str:
    return "-" if status == NOT_APPLICABLE else status.lower()


@dataclass
class SweepReport:
    records: list[ValidationRecord]
    warnings: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {MATCH: 0, MISMATCH: 0, INCONCLUSIVE: 0}
        for r in self.records:
            out[r.agreement] += 1
        return out

    @property
    def has_mismatch(self) -> bool:
        return self.counts[MISMATCH] > 0

    def strategy_coverage(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for r in self.records:
            for name in r.strategy_colorings:
                out.setdefault(name, []).append(r.spec)
        return out

    def suspects(self) -> list[str]:
        return [r.spec for r in self.records if r.prediction.verdict == "SUSPECT"]

    def to_json(self, timing: bool = False) -> dict:
        return {
            "counts": self.counts,
            "mismatches": [r.spec for r in self.records if r.agreement == MISMATCH],
            "suspects": self.suspects(),
            "coloring_discrepancies": [
                {"spec": r.spec, "strategies": [x["strategy"] for x in r.discrepancies]}
                for r in self.records if r.discrepancies],
            "strategy_coverage": self.strategy_coverage(),
            "warnings": self.warnings,
            "records": [r.to_json(timing) for r in self.records],
        }

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2) + "\n"

    def text_table(self) -> str:
        head = ("group", "n", "m", "icn", "inv", "awn(lit/real)", "rule", "pred", "oracle", "agree")
        rows = [head]
        for r in self.records:
            inv = r.invariants
            pv = r.prediction
            pred = "-" if pv.value is None else (f"{pv.value}?" if pv.verdict == "SUSPECT"
                                                 else str(pv.value))
            orc = (str(r.oracle.value) if r.oracle.kind == "EXACT"
                   else f"[{r.oracle.lb},{r.oracle.ub}]")
            awn = f"{_short(r.awning_literal.status)}/{_short(r.awning.status)}"
            rows.append((r.spec, str(r.order), str(inv["m"]), str(inv["icn"]), str(inv["invmax"]),
                         awn, pv.rule_id, pred, orc, r.agreement))
        widths = [max(len(row[i]) for row in rows) for i in range(len(head))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        c = self.counts
        lines.append("")
        lines.append(f"MATCH {c[MATCH]}  MISMATCH {c[MISMATCH]}  INCONCLUSIVE {c[INCONCLUSIVE]}")
        disc = [r.spec for r in self.records if r.discrepancies]
        if disc:
            lines.append("coloring discrepancies: " + ", ".join(disc))
        return "\n".join(lines) + "\n"


def sweep(catalog: Sequence[GroupSpec | str], rc_budget: Optional[int] = None,
          awning_budget: int = DEFAULT_AWNING_BUDGET, jobs: int = 1, **kwargs) -> SweepReport:
    """Cross-validate every catalog entry; records keep catalog order."""
    run = partial(cross_validate, rc_budget=rc_budget, awning_budget=awning_budget, **kwargs)
    if jobs > 1 and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run, catalog))
    else:
        records = [run(s) for s in catalog]
    return SweepReport(records)
