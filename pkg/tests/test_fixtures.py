from __future__ import annotations

import copy
import json
from importlib import resources

import pytest

from pantsgraph.circuits import is_two_tight
from pantsgraph.fixtures import FixtureError, evaluate, from_dict, load_fixture, names


def raw(name):
    return json.loads((resources.files("pantsgraph.fixtures") / "data" / f"{name}.json").read_text())


def test_registry():
    assert names() == [
        "heptagon_n22_standard",
        "heptagon_nonstandard",
        "hexagon_n13",
        "pentagon_n4_not2tight",
        "quad_2tight",
    ]
    with pytest.raises(KeyError):
        load_fixture("octagon")


@pytest.mark.parametrize("name", names())
def test_fixture_expectations(name):
    fx = load_fixture(name)
    got = evaluate(fx)
    for k, v in fx.expect.items():
        assert got[k] == v, k
    for path, expect in fx.subpaths:
        if "two_tight" in expect:
            assert is_two_tight(path) == expect["two_tight"]
    assert fx.provenance


def test_quad():
    fx = load_fixture("quad_2tight")
    assert len(fx.graph) == 4
    assert is_two_tight(fx.circuit)
    (path, expect), = fx.subpaths
    assert not is_two_tight(path) and expect == {"two_tight": False}


def test_pentagon_not_two_tight():
    assert not is_two_tight(load_fixture("pentagon_n4_not2tight").circuit)


def test_hexagon():
    got = evaluate(load_fixture("hexagon_n13"))
    assert got["tame"] and got["alternating"] and got["type3_edges"] == 3


def test_heptagons():
    assert evaluate(load_fixture("heptagon_n22_standard"))["standard_heptagon"]
    got = evaluate(load_fixture("heptagon_nonstandard"))
    assert not got["standard_heptagon"] and not got["tame"]


def test_validation_errors():
    d = raw("quad_2tight")
    bad = copy.deepcopy(d)
    bad["provenance"] = ""
    with pytest.raises(FixtureError):
        from_dict(bad)
    bad = copy.deepcopy(d)
    bad["edges"][0]["type"] = 1
    with pytest.raises(FixtureError):
        from_dict(bad)
    bad = copy.deepcopy(d)
    bad["circuit"] = bad["circuit"][::2]
    with pytest.raises(FixtureError):
        from_dict(bad)
    bad = copy.deepcopy(d)
    bad["expect"]["colour"] = True
    with pytest.raises(FixtureError):
        from_dict(bad)
