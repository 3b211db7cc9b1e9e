from __future__ import annotations

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphres.certify import REPORT_FIELDS, ResourceReport, certify, metrology_threshold
from graphres.errors import DomainError


def test_star_depth_example():
    r = certify(32, 128)
    assert r.entanglement_depth == 96
    assert r.bell_depth == 64
    assert r.entangled and r.bell_correlated


@pytest.mark.parametrize("L", [2, 3, 10, 128])
def test_heisenberg_limit(L):
    r = certify(0, L)
    assert r.qfi_lower_bound == L * L
    assert r.E == 0.25
    assert r.entanglement_depth == L and r.bell_depth == L


def test_separable_boundary():
    r = certify(9, 10)
    assert r.separable and not r.entangled
    assert r.entanglement_depth == 1
    assert r.bell_depth == 0
    assert r.entanglement_margin == 0


def test_bell_threshold():
    assert not certify(4, 10).bell_correlated
    assert certify(3.99, 10).bell_correlated


def test_metrology_threshold():
    assert metrology_threshold(16) == 2
    assert certify(1.99, 16).sub_shot_noise
    assert not certify(2, 16).sub_shot_noise
    with pytest.raises(DomainError):
        metrology_threshold(1)


@pytest.mark.parametrize("gamma, L", [(-0.1, 4), (math.inf, 4), (math.nan, 4), (1, 1)])
def test_invalid_inputs(gamma, L):
    with pytest.raises(DomainError):
        certify(gamma, L)


@given(st.integers(2, 200), st.floats(0, 300, allow_nan=False))
def test_report_properties(L, gamma):
    r = certify(gamma, L)
    assert r.E == pytest.approx(4.0 ** -(1 + gamma), rel=1e-12)
    assert 1 <= r.entanglement_depth <= L
    assert 0 <= r.bell_depth <= L
    assert r.bell_depth <= r.entanglement_depth or r.separable
    # a Bell-correlated state is always entangled
    assert not r.bell_correlated or r.entangled
    assert r.entangled == (r.entanglement_margin > 0)
    assert r.qfi_lower_bound == pytest.approx(4 * L * L * r.E, rel=1e-12)
    assert r.phase_variance_bound == pytest.approx(1 / r.qfi_lower_bound)


@given(st.integers(2, 64), st.floats(0, 60), st.floats(0, 60))
def test_depth_monotone_in_gamma(L, a, b):
    lo, hi = sorted((a, b))
    assert certify(lo, L).entanglement_depth >= certify(hi, L).entanglement_depth
    assert certify(lo, L).bell_depth >= certify(hi, L).bell_depth


def test_round_trip_and_text():
    r = certify(2.5, 12)
    d = r.to_dict()
    assert tuple(d) == REPORT_FIELDS
    assert ResourceReport.from_dict(json.loads(r.to_json())) == r
    text = r.to_text()
    assert "entanglement_depth   10" in text
    with pytest.raises(DomainError):
        ResourceReport.from_dict({"L": 3})
