import pytest

from dualcurves.bundles import BUNDLES, bound_arithmetic

from conftest import GF, QQ


@pytest.mark.parametrize("name", sorted(BUNDLES))
def test_bundle_passes(name, field):
    rep = BUNDLES[name](field, 0)
    assert rep["bundle"] == name
    failed = [k for k, v in rep["checks"].items() if not v]
    assert not failed and rep["pass"]


def test_diamond_bundle_data():
    rep = BUNDLES["example-3.3"](QQ, 0)
    prof = rep["data"]["profile"]
    assert prof["reg_quotient"] == 2 and prof["acm"] and not prof["gorenstein"]


def test_pfaffian_bundle_data():
    rep = BUNDLES["example-5.1"](GF, 0)
    assert rep["data"]["profile"]["betti"][-1] == {"i": 3, "j": 10, "b": 1}
    assert rep["data"]["bounds"]["kappa"] == 2
    assert BUNDLES["example-5.2"](GF, 0)["data"]["bounds"]["kappa"] == 1


def test_bound_arithmetic():
    assert bound_arithmetic() == {
        "floor_7_6": 2,
        "floor_7_7": 1,
        "floor_5_1": 5,
        "ci_N_27_lines": 10,
        "ci_bound_27_lines": 10,
    }
