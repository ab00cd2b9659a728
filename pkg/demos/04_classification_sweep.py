"""
Predicted versus computed rc over the default catalog
=====================================================

Each group gets a rule-table prediction and an oracle value.  MATCH means
both are exact and equal; INCONCLUSIVE covers interval oracles and the
suspect rule.  Takes about ten seconds.
"""

from epg_rainbow import default_catalog, sweep

report = sweep(default_catalog())
print(report.text_table())

print("awning probes (only where the oracle is exact):")
for rec in report.records:
    probes = {k: v for k, v in rec.probes.items() if k.startswith("cor")}
    if probes:
        print(f"  {rec.spec}: icn={rec.invariants['icn']} {probes}")

print("\nstrategies and the groups they were built for:")
for name, groups in sorted(report.strategy_coverage().items()):
    print(f"  {name:18s} {len(groups)}")
