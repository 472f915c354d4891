import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from metacyclic import catalog
from metacyclic.dataset import ConeDatum, parse
from metacyclic.enumeration import enumerate_all
from metacyclic.multitwist import (AssemblyError, Component, PseudoPeriodicDataSet, assemble, compatible,
                                   multitwist_of, orbit_size, parse_pds, total_genus, twist_factor)


def load(name):
    return PseudoPeriodicDataSet.from_json(catalog.assembly_inputs()[name])


def test_twist_factor_examples():
    assert twist_factor(ConeDatum(3, 5), 5, ConeDatum(3, 5), 5) == -1
    assert twist_factor(ConeDatum(7, 8), 8, ConeDatum(1, 10), 10) == -1
    assert twist_factor(None, 5, None, 5) == 0


@pytest.mark.parametrize("g", range(2, 11))
def test_compatibility_family(g):
    n = 2 * g + 1
    assert twist_factor(ConeDatum(g, n), n, ConeDatum(g + 1, n), n) == 0


def test_compatible_examples():
    assert compatible(None, 6, None, 6)
    assert not compatible(ConeDatum(1, 6), 6, ConeDatum(1, 3), 6)
    assert compatible(ConeDatum(7, 8), 8, ConeDatum(1, 10), 10)
    assert orbit_size(ConeDatum(1, 3), 6) == 2


def test_self_glued_degree5():
    pds = load("assembly_self_glued_degree5")
    assert (pds.degree, pds.genus()) == (5, 3)
    assert multitwist_of(pds) == [(0, -1)]
    assert str(pds) == "[[5;((5,0;(4,5),(3,5)_1,(3,5)_1),1);((1,-1,-1;1,1));-]]"


def test_degree40():
    pds = load("assembly_degree40")
    assert (pds.degree, pds.genus()) == (40, 4)
    assert [p.q for p in pds.pairings] == [-1]


def test_degree60():
    pds = load("assembly_degree60")
    assert pds.degree == 60 and total_genus(pds) == 6
    assert multitwist_of(pds) == [(0, -3), (1, 4)]
    assert [(p.twist_factor, p.modulus) for p in pds.pairings] == [(-1, 20), (1, 15)]
    assert "((1,-3,-1;1,2)),((1,4,1;2,3))" in str(pds)


@pytest.mark.parametrize("name", sorted(catalog.assembly_inputs()))
def test_round_trips(name):
    pds = load(name)
    assert parse_pds(str(pds)) == pds
    assert PseudoPeriodicDataSet.from_json(json.loads(json.dumps(pds.to_json()))) == pds
    for p in pds.pairings:
        assert p.q * p.modulus == pds.degree * p.twist_factor


def test_rejections():
    five = parse("(5,0;(1,5),(2,5),(3,5),(4,5))")
    with pytest.raises(AssemblyError) as info:
        assemble([five], [((0, 1), (0, 2))])
    assert info.value.pairing == 0
    with pytest.raises(AssemblyError):
        assemble([parse("(5,0;(4,5),(3,5),(3,5))")], [((0, 1), (0, 2))], degree=10)
    with pytest.raises(AssemblyError):
        assemble([parse("(5,0;(4,5),(3,5),(3,5))")], [((0, 1), (0, 1))])
    obj = catalog.assembly_inputs()["assembly_self_glued_degree5"]
    obj = {**obj, "pairings": [[1, 1, -1, [0, 1], [0, 2]]]}
    with pytest.raises(AssemblyError):
        PseudoPeriodicDataSet.from_json(obj)


def _angle(c):
    return Fraction(pow(c.d, -1, c.m), c.m)


CONES = [(c, ds.n) for ds in enumerate_all(2) + enumerate_all(3) for c in ds.cone]


@given(st.sampled_from(CONES), st.sampled_from(CONES))
def test_twist_factor_symmetric_and_odd(a, b):
    (ca, na), (cb, nb) = a, b
    k = twist_factor(ca, na, cb, nb)
    assert k == twist_factor(cb, nb, ca, na)
    inv_a, inv_b = ConeDatum(ca.m - ca.d, ca.m), ConeDatum(cb.m - cb.d, cb.m)
    n = math.lcm(na, nb)
    k_inv = twist_factor(inv_a, na, inv_b, nb)
    if 2 * abs(k) != n:
        assert k_inv == -k
    # angles are those of the first return maps, so n * angle is integral
    total = n * (_angle(ca) + _angle(cb))
    assert total.denominator == 1 and (total - k) % n == 0
    assert -n < 2 * k <= n


def test_components_take_orbit_sizes_structurally():
    comp = Component(parse("(3,0;(1,3),(1,3),(2,3),(2,3))"), 2)
    pds = assemble([comp], [((0, 2), (0, 3))])
    assert pds.structural_only
