import copy
import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from metacyclic import catalog
from metacyclic.dataset import parse, power
from metacyclic.enumeration import enumerate_all
from metacyclic.pairs import (CERTIFIED, NECESSARY, ConfiguredPair, PairError, autk_exists, check_level_m,
                              check_metacyclic)

FIXTURES = catalog.pair_fixtures()


def verdict(obj):
    return check_metacyclic(ConfiguredPair.from_json(obj))


def test_autk_examples():
    for g in (2, 3, 4):
        n = 2 * g + 1
        w = autk_exists(parse(f"({n},1;(1,{n}),({2 * g},{n}))"), -1)
        assert w is not None and w.pairing == (1, 0)
    assert autk_exists(parse("(5,0;(4,5),(3,5),(3,5))"), 2) is None


SAMPLE = enumerate_all(2) + enumerate_all(3)


@given(st.sampled_from(SAMPLE), st.data())
def test_autk_identity_and_composition(ds, data):
    w = autk_exists(ds, 1)
    assert w is not None and w.pairing == tuple(range(len(ds.cone)))
    units = [k for k in range(1, ds.n) if math.gcd(k, ds.n) == 1]
    k = data.draw(st.sampled_from(units))
    l = data.draw(st.sampled_from(units))
    if autk_exists(ds, k) and autk_exists(ds, l):
        assert autk_exists(ds, k * l % ds.n) is not None


@given(st.sampled_from(SAMPLE), st.data())
def test_autk_witness_is_valid(ds, data):
    units = [k for k in range(1, ds.n) if math.gcd(k, ds.n) == 1]
    k = data.draw(st.sampled_from(units))
    w = autk_exists(ds, k)
    brute = any(all(c.m == ds.cone[p[x]].m and (c.d - k * ds.cone[p[x]].d) % c.m == 0
                    for x, c in enumerate(ds.cone))
                for p in itertools.permutations(range(len(ds.cone))))
    assert (w is not None) == brute
    if w is not None:
        for x, c in enumerate(ds.cone):
            y = ds.cone[w.pairing[x]]
            assert c.m == y.m and (c.d - k * y.d) % c.m == 0


def test_twist_root_with_involution():
    v = verdict(FIXTURES["example_zz2s3pp"])
    assert v.passed and v.ambient_genus == 3
    assert v.presentation.label == "Z_2×Z"
    assert v["iv"].level == NECESSARY
    assert all(v[c].level == CERTIFIED for c in ("structure", "i", "ii", "iii", "v"))


@pytest.mark.parametrize("g", [2, 3])
def test_multitwist_root_with_involution(g):
    obj = FIXTURES[f"multitwist_root_involution_g{g}"]
    v = verdict(obj)
    assert v.passed and v.ambient_genus == 2 * g + 1
    assert v.presentation.label == "Z⋊_{-1}Z_2"
    qa, qb = (e["q"] for e in obj["edges"])
    assert qa == -qb
    # exponents +-3 reduce mod 2g+1 to the normalised values
    assert (qa - 3) % (2 * g + 1) == 0 or (qa + 3) % (2 * g + 1) == 0


@pytest.mark.parametrize("g", [2, 3])
def test_square_root_inverting_periodic(g):
    v = verdict(FIXTURES[f"square_root_inverting_g{g}"])
    assert v.passed and v.ambient_genus == 2 * g + 1
    assert v.presentation.label == f"Z_{2 * g + 1}⋊_{{-1}}Z"


def test_mutations_are_detected():
    muts = catalog.pair_mutations()
    assert len(muts) >= 10
    for mu in muts:
        v = verdict(mu.pair)
        assert not v.passed, (mu.fixture, mu.description)


def test_exponent_flip_fails_condition_iii():
    obj = copy.deepcopy(FIXTURES["multitwist_root_involution_g3"])
    obj["edges"][1]["q"] *= -1
    assert not verdict(obj)["iii"].passed


def test_harmless_flip_of_g_exponent_still_passes():
    # G' T_a T_b with G' from the fixture still inverts F and squares to T_a^2 T_b^2
    obj = copy.deepcopy(FIXTURES["square_root_inverting_g2"])
    obj["edges"][1]["q_prime"] = 2
    assert verdict(obj).passed


def test_commuting_single_vertex_degenerates():
    obj = copy.deepcopy(FIXTURES["example_zz2s3pp"])
    v = verdict(obj)
    for c in ("iii", "iv", "v"):
        assert v[c].passed


def test_pair_errors():
    obj = copy.deepcopy(FIXTURES["multitwist_root_involution_g2"])
    obj["pi_G"]["vertices"] = [0, 0]
    with pytest.raises(PairError):
        verdict(obj)
    obj = copy.deepcopy(FIXTURES["multitwist_root_involution_g2"])
    obj["edges"][0]["ends"] = [0, 5]
    with pytest.raises(PairError):
        verdict(obj)
    obj = catalog.commuting_pseudo_anosov_pair()
    obj["k"] = -1
    with pytest.raises(PairError):
        verdict(obj)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_pair_json_round_trip(name):
    pair = ConfiguredPair.from_json(FIXTURES[name])
    again = ConfiguredPair.from_json(json.loads(json.dumps(pair.to_json())))
    assert again == pair
    assert verdict(pair.to_json()).to_json() == verdict(FIXTURES[name]).to_json()


def test_level_m():
    obj = catalog.commuting_pseudo_anosov_pair()
    assert check_level_m(ConfiguredPair.from_json(obj), 3).passed
    flipped = copy.deepcopy(obj)
    flipped["k"] = -1
    v = check_level_m(ConfiguredPair.from_json(flipped), 3)
    assert not v["commute"].passed
    periodic = copy.deepcopy(obj)
    periodic["vertices"][0]["f_part"] = {"kind": "periodic", "dataset": "(3,0;(1,3),(1,3),(1,3))"}
    assert not check_level_m(ConfiguredPair.from_json(periodic), 3).passed
    with pytest.raises(ValueError):
        check_level_m(ConfiguredPair.from_json(obj), 2)


def test_power_of_left_side_is_right_side():
    for g in (2, 3):
        obj = FIXTURES[f"square_root_inverting_g{g}"]
        left, right = (parse(v["f_part"]["dataset"]) for v in obj["vertices"])
        assert power(left, -1) == right
