import json

import pytest

from gcmassey.verify import (Certificate, expected_polygon_dimension, kernel_identity, labeled_polygon_space,
                             theta_nest_contributions, verify_all, verify_deg0, verify_dsquared,
                             verify_nontriviality, verify_propzero, verify_theta_coefficient,
                             verify_wheel_cycle)


def _stable(c: Certificate) -> dict:
    d = c.to_dict()
    d.pop("ms")
    return d


@pytest.mark.parametrize("make", [lambda: verify_wheel_cycle(1), lambda: verify_theta_coefficient(1),
                                  lambda: verify_propzero(1), lambda: verify_nontriviality(1)])
def test_certificates_reproducible(make):
    a, b = make(), make()
    assert _stable(a) == _stable(b)
    assert a.passed
    json.loads(a.to_json())


def test_routes_agree_at_j1():
    assert verify_nontriviality(1, "brute").verdict == verify_nontriviality(1, "pipeline").verdict == "PASS"


def test_four_triangle_nestings():
    contribs = theta_nest_contributions(1)
    assert len(contribs) == 4
    assert len({x for _, x in contribs}) == 1
    total = sum(x for _, x in contribs)
    c = verify_theta_coefficient(1).witness["theta_coefficient"]
    assert c == f"{total.numerator}/{total.denominator}"


@pytest.mark.parametrize("j", [2, 3])
def test_kernel_identity(j):
    ki = kernel_identity(j)
    assert ki["kernel_identity"] and ki["v_nonzero"] and ki["pair_terms_agree"] and ki["triple_terms_agree"]


def test_polygon_space_j2():
    res = labeled_polygon_space(2)
    assert res["dim"] == expected_polygon_dimension(2) == 24
    assert res["x_in_image"]


def test_unfiltered_row_is_nonzero():
    # without the simple-loop filter the row is nonzero at j = 2 (sanity inversion)
    c = verify_propzero(2, simple_loop_free=False)
    assert c.verdict == "FAIL" and c.witness["nonzero_entries"] > 0


def test_dsquared_certificate():
    c = verify_dsquared("hlie", 1, 3)
    assert c.passed and c.witness["first_nonzero"] is None


def test_bad_parameters():
    with pytest.raises(ValueError):
        verify_wheel_cycle(0)
    with pytest.raises(ValueError):
        verify_nontriviality(2, "brute")
    with pytest.raises(ValueError):
        verify_nontriviality(1, "other")
    with pytest.raises(ValueError):
        verify_deg0(3)


def test_verify_all_sorted():
    certs = verify_all()
    keys = [(c.claim, json.dumps(c.params, sort_keys=True)) for c in certs]
    assert keys == sorted(keys)
    assert {c.claim for c in certs} == {"wheel-cycle", "theta", "propzero", "deg0", "nontrivial", "dsquared"}
