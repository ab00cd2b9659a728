from __future__ import annotations

import pytest
from conftest import pipeline
from hypothesis import given, settings
from hypothesis import strategies as st

from epg_rainbow.awning import (AwningCertificate, DimensionMismatch, SearchBudgetExceeded,
                                awning_order_probe, find_awning, probe_orders, verify_awning)
from epg_rainbow.catalog import default_catalog
from epg_rainbow.colorings import realizes_two_coloring

CATALOG = [str(s) for s in default_catalog()]
SMALL_M = [s for s in CATALOG if 2 <= pipeline(s)[1].m <= 6]


def test_cyclic_groups_have_no_awning_question():
    _, d, _, _ = pipeline("CYCLIC 8")
    assert find_awning(d) is None
    assert not awning_order_probe(d).applicable


@pytest.mark.parametrize("spec", SMALL_M)
def test_found_certificates_verify(spec):
    _, d, _, g = pipeline(spec)
    for accept in (None, realizes_two_coloring(d, g)):
        cert = find_awning(d, accept=accept)
        if cert is not None:
            assert verify_awning(d, cert) == (True, None)


def test_quaternion_awning():
    _, d, _, g = pipeline("DICYCLIC 2")
    cert = find_awning(d, accept=realizes_two_coloring(d, g))
    assert cert is not None and verify_awning(d, cert)[0]


def test_klein_four_literal_awning_is_degenerate():
    # every intersection is trivial, so all witnesses are the identity
    G, d, _, g = pipeline("ELEMENTARY_ABELIAN 2 2")
    cert = find_awning(d)
    assert cert is not None
    assert set(cert.witnesses.values()) == {G.identity}
    assert find_awning(d, accept=realizes_two_coloring(d, g)) is None


def test_violations_are_reported():
    _, d, _, _ = pipeline("DICYCLIC 2")
    cert = find_awning(d)
    w = dict(cert.witnesses)
    w[(0, 1)] = 5 if 5 not in d.intersections[0][1] else 3
    ok, why = verify_awning(d, AwningCertificate(cert.order, w, cert.side))
    assert not ok and why.condition == "2"
    bad_side = dict(cert.side)
    bad_side[(0, 2)] = "C"
    ok, why = verify_awning(d, AwningCertificate(cert.order, cert.witnesses, bad_side))
    assert not ok and why.condition == "1"


def test_flip_rule_violation():
    # h(0,1) = h(1,2) = e with equal sides breaks the r = j case
    _, d, _, _ = pipeline("ELEMENTARY_ABELIAN 2 2")
    h = {(0, 1): 0, (0, 2): 0, (1, 2): 0}
    cert = AwningCertificate((0, 1, 2), h, {(0, 1): "A", (0, 2): "A", (1, 2): "A"})
    ok, why = verify_awning(d, cert)
    assert not ok and why.condition == "3a"
    cert = AwningCertificate((0, 1, 2), h, {(0, 1): "B", (0, 2): "B", (1, 2): "B"})
    assert verify_awning(d, cert)[1].condition == "3b"


def test_dimension_mismatch():
    _, d, _, _ = pipeline("DICYCLIC 2")
    with pytest.raises(DimensionMismatch):
        verify_awning(d, AwningCertificate((0, 1), {(0, 1): 0}, {(0, 1): "A"}))
    with pytest.raises(DimensionMismatch):
        find_awning(d, order=(0, 0, 1))


def test_budget():
    _, d, _, _ = pipeline("DIRECT_PRODUCT(CYCLIC 2, DICYCLIC 2)")
    with pytest.raises(SearchBudgetExceeded):
        find_awning(d, budget=3)


def test_certificate_json_round_trip():
    _, d, _, _ = pipeline("DICYCLIC 3")
    cert = find_awning(d)
    assert AwningCertificate.from_json(cert.to_json()) == cert


def test_probe_orders():
    assert len(probe_orders(3, 720)) == 6
    sample = probe_orders(9, 50)
    assert len(sample) == 50 and sample[0] == tuple(range(9))
    assert len(set(sample)) == 50
    assert probe_orders(9, 50) == sample


@pytest.mark.parametrize("spec", ["DICYCLIC 2", "DICYCLIC 3", "ELEMENTARY_ABELIAN 2 2",
                                  "DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)"])
def test_order_probe(spec):
    _, d, _, _ = pipeline(spec)
    probe = awning_order_probe(d, 720)
    assert probe.applicable and len(probe.orders_tried) > 0
    assert probe.order_invariant is not None


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_M), st.data())
def test_found_certificates_verify_under_any_order(spec, data):
    _, d, _, _ = pipeline(spec)
    order = data.draw(st.permutations(range(d.m)))
    cert = find_awning(d, order=tuple(order))
    if cert is not None:
        assert cert.order == tuple(order)
        assert verify_awning(d, cert)[0]


def test_quaternion_awning_under_every_order():
    _, d, _, g = pipeline("DICYCLIC 2")
    for accept in (None, realizes_two_coloring(d, g)):
        probe = awning_order_probe(d, 720, accept=accept)
        assert len(probe.found_for) == 6 and probe.order_invariant


def test_literal_awning_existence_depends_on_order():
    # observed: the conditions alone hold for 16 of the 24 orders of Z_2 x Z_4
    _, d, _, g = pipeline("DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)")
    probe = awning_order_probe(d, 720)
    assert (len(probe.found_for), len(probe.not_found_for)) == (16, 8)
    assert probe.order_invariant is False
    realized = awning_order_probe(d, 720, accept=realizes_two_coloring(d, g))
    assert realized.found_for == [] and realized.order_invariant
