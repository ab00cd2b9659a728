from __future__ import annotations

import pytest
from conftest import pipeline

from epg_rainbow.catalog import default_catalog
from epg_rainbow.cyclic import distinct_witnesses
from epg_rainbow.groups import generated_subgroup, is_cyclic

CATALOG = [str(s) for s in default_catalog()]


@pytest.mark.parametrize("spec", CATALOG)
def test_decomposition_invariants(spec):
    G, d, rep, _ = pipeline(spec)
    subs = [s for _, s in d.subgroups]
    # maximal: no cyclic subgroup strictly contains an entry
    for s in subs:
        assert not any(s < generated_subgroup(G, g) for g in range(G.order))
    # covering, canonical generator, canonical order
    assert frozenset().union(*subs) == frozenset(range(G.order))
    for gen, s in d.subgroups:
        assert generated_subgroup(G, gen) == s
        assert gen == min(g for g in s if generated_subgroup(G, g) == s)
    keys = [(-len(s), gen) for gen, s in d.subgroups]
    assert keys == sorted(keys)
    assert len(set(subs)) == d.m
    # intersections symmetric and correct
    for i in range(d.m):
        for j in range(d.m):
            assert d.intersections[i][j] == subs[i] & subs[j]
    # m = 1 exactly for cyclic groups
    assert (d.m == 1) == (is_cyclic(G) is not None)
    # InvMax within ics within Max
    assert set(rep.invmax_indices) <= set(rep.ics_indices) <= set(range(d.m))


@pytest.mark.parametrize("spec, m, icn, invmax", [
    ("CYCLIC 6", 1, 1, 0),
    ("ELEMENTARY_ABELIAN 2 2", 3, 3, 3),
    ("ELEMENTARY_ABELIAN 2 3", 7, 7, 7),
    ("DICYCLIC 2", 3, 0, 0),
    ("SYMMETRIC 3", 4, 4, 3),
    ("DIHEDRAL 4", 5, 5, 4),
    ("DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)", 4, 2, 2),
    ("ELEMENTARY_ABELIAN 3 2", 4, 4, 0),
    ("SYMMETRIC 4", 13, 13, 6),
])
def test_known_invariants(spec, m, icn, invmax):
    _, d, rep, _ = pipeline(spec)
    assert (d.m, rep.icn, rep.invmax) == (m, icn, invmax)


def test_excluded_entries_carry_a_witness():
    G, d, rep, _ = pipeline("DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)")
    for i, (j, x) in rep.witness.items():
        assert i not in rep.ics_indices
        assert x != G.identity and x in d.intersections[i][j]


def test_quaternion_subgroups_meet_in_center():
    G, d, _, _ = pipeline("DICYCLIC 2")
    assert all(len(s) == 4 for _, s in d.subgroups)
    for i in range(3):
        for j in range(i + 1, 3):
            assert len(d.intersections[i][j]) == 2


@pytest.mark.parametrize("spec", ["DIRECT_PRODUCT(CYCLIC 2, CYCLIC 10)",
                                  "DIRECT_PRODUCT(DICYCLIC 2, CYCLIC 3)"])
def test_distinct_witnesses_found(spec):
    G, d, _, _ = pipeline(spec)
    h = distinct_witnesses(d)
    assert h is not None
    assert len(set(h.values())) == len(h) == d.m * (d.m - 1) // 2
    for (i, j), x in h.items():
        assert x != G.identity and x in d.intersections[i][j]


@pytest.mark.parametrize("spec", ["DICYCLIC 2", "CYCLIC 5", "ELEMENTARY_ABELIAN 2 2", "SYMMETRIC 3"])
def test_distinct_witnesses_absent(spec):
    _, d, _, _ = pipeline(spec)
    assert distinct_witnesses(d) is None
