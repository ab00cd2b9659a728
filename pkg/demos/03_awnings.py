"""
Awnings: witness systems for rainbow 2-colorings
================================================

An awning picks a witness in every pairwise intersection of maximal cyclic
subgroups and labels each one A or B.  Meeting the labelling rules is not
always enough for the induced two-coloring to work, so the search can be
asked to keep going until the coloring verifies.
"""

from epg_rainbow import (construct, enhanced_power_graph, find_awning, is_rainbow_connected,
                         maximal_cyclic_subgroups, rc_exact, verify_awning)
from epg_rainbow.awning import awning_order_probe
from epg_rainbow.colorings import awning_colorings, realizes_two_coloring

for spec in ["DICYCLIC 2", "ELEMENTARY_ABELIAN 2 2", "DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)"]:
    G = construct(spec)
    d = maximal_cyclic_subgroups(G)
    g = enhanced_power_graph(G, d)
    literal = find_awning(d)
    realized = find_awning(d, accept=realizes_two_coloring(d, g))
    print(spec)
    if literal is not None:
        w = {k: G.labels[v] + literal.side[k] for k, v in literal.witnesses.items()}
        print("  first awning (rules only):", w, "verifies:", verify_awning(d, literal)[0])
        for reading, col in awning_colorings(d, g, literal):
            ok, pair = is_rainbow_connected(g, col)
            print(f"    {reading:8s} coloring rainbow connected: {ok}"
                  + ("" if ok else f" (fails at {G.labels[pair[0]]}, {G.labels[pair[1]]})"))
    print("  awning whose coloring works:", None if realized is None else
          {k: G.labels[v] for k, v in realized.witnesses.items()})
    print("  rc =", rc_exact(g).value)
    lit = awning_order_probe(d)
    print(f"  rules-only awning found under {len(lit.found_for)} of {len(lit.orders_tried)} orders")
    print()
