from __future__ import annotations

import functools

from epg_rainbow.cyclic import ics_report, maximal_cyclic_subgroups
from epg_rainbow.graphs import enhanced_power_graph
from epg_rainbow.groups import construct


@functools.lru_cache(maxsize=None)
def pipeline(spec: str):
    """(group, decomposition, ics report, enhanced power graph) for a spec."""
    G = construct(spec)
    d = maximal_cyclic_subgroups(G)
    return G, d, ics_report(d), enhanced_power_graph(G, d)


# lines recorded by the acceptance checks, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in ACCEPTANCE_LINES:
            terminalreporter.write_line(text)
