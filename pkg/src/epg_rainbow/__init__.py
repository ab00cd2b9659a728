"""Rainbow connection numbers of enhanced power graphs of small finite groups."""

from .awning import AwningCertificate, find_awning, verify_awning
from .catalog import default_catalog, load_catalog
from .classifier import Prediction, ValidationRecord, classify, cross_validate, sweep
from .colorings import STRATEGIES, build_strategy_coloring
from .cyclic import CyclicDecomposition, IcsReport, distinct_witnesses, ics_report, maximal_cyclic_subgroups
from .graphs import SimpleGraph, enhanced_power_graph, export_dot, power_graph
from .groups import FiniteGroup, GroupError, construct, from_cayley_table, parse_spec
from .rainbow import EdgeColoring, RcResult, is_rainbow_connected, rc_exact, rc_naive

__all__ = [
    "AwningCertificate", "find_awning", "verify_awning",
    "default_catalog", "load_catalog",
    "Prediction", "ValidationRecord", "classify", "cross_validate", "sweep",
    "STRATEGIES", "build_strategy_coloring",
    "CyclicDecomposition", "IcsReport", "distinct_witnesses", "ics_report", "maximal_cyclic_subgroups",
    "SimpleGraph", "enhanced_power_graph", "export_dot", "power_graph",
    "FiniteGroup", "GroupError", "construct", "from_cayley_table", "parse_spec",
    "EdgeColoring", "RcResult", "is_rainbow_connected", "rc_exact", "rc_naive",
]
