"""
Groups, maximal cyclic subgroups and the independence cyclic set
=================================================================

Build a few small groups, list their maximal cyclic subgroups and see which
of them meet the others only in the identity.
"""

from epg_rainbow import construct, ics_report, maximal_cyclic_subgroups
from epg_rainbow.catalog import data_path
from epg_rainbow.groups import element_order, read_cayley_file

for spec in ["CYCLIC 6", "ELEMENTARY_ABELIAN 2 2", "DICYCLIC 2", "SYMMETRIC 3",
             "DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)"]:
    G = construct(spec)
    d = maximal_cyclic_subgroups(G)
    rep = ics_report(d)
    print(f"{spec}  (order {G.order})")
    for gen, members in d.subgroups:
        elems = ", ".join(G.labels[x] for x in sorted(members))
        print(f"  <{G.labels[gen]}> order {element_order(G, gen)}: {{{elems}}}")
    print(f"  m = {d.m}, icn = {rep.icn}, |InvMax| = {rep.invmax}")
    print()

# a Cayley table can also come from a file; the packaged A_4 is one
G = read_cayley_file(data_path("alternating4.cayley"))
d = maximal_cyclic_subgroups(G)
print("A_4:", d.m, "maximal cyclic subgroups of sizes", [len(s) for _, s in d.subgroups])
