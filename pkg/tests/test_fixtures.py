"""Worked-number fixtures reproduce the classical examples exactly."""
from __future__ import annotations

import pytest

from conftest import admissible_chain_params
from fixdiv.fixtures import (
    beauville_mukai_fixture,
    chain_fixture,
    fixture_to_dict,
    hk4_fixture,
    mayer_fixture,
)


@pytest.mark.parametrize("d", range(1, 11))
def test_mayer_fixture(d):
    result = mayer_fixture(d)
    assert result.ok, [c for c in result.checks if not c.passed]


def test_mayer_degree_one_reports_predicted_bk_failure():
    result = mayer_fixture(1)
    descriptions = [c.description for c in result.checks]
    assert "BK failure predicted at d=1" in descriptions
    assert result.ok


def test_mayer_rejects_nonpositive_degree():
    with pytest.raises(ValueError):
        mayer_fixture(0)


@pytest.mark.parametrize("d", range(1, 11))
def test_beauville_mukai_fixture_g2(d):
    result = beauville_mukai_fixture(2, d)
    assert result.ok, [c for c in result.checks if not c.passed]


@pytest.mark.parametrize("g", (2, 3, 4))
def test_beauville_mukai_fixture_higher_genus(g):
    assert beauville_mukai_fixture(g, 3).ok


def test_beauville_mukai_input_validation():
    with pytest.raises(ValueError):
        beauville_mukai_fixture(1, 2)
    with pytest.raises(ValueError):
        beauville_mukai_fixture(2, 0)


@pytest.mark.parametrize("q_lb", (1, 2, 3))
def test_hk4_fixture(q_lb):
    assert hk4_fixture(q_lb).ok


@pytest.mark.parametrize("k,d,q_last", admissible_chain_params((1, 2, 3), (-4, -6, -8)))
def test_chain_fixture(k, d, q_last):
    result = chain_fixture(k, d, q_last)
    assert result.ok, [c for c in result.checks if not c.passed]


def test_fixture_serialization_shape():
    doc = fixture_to_dict(mayer_fixture(2))
    assert doc["ok"] is True
    assert all({"description", "expected", "computed", "pass"} <= set(c) for c in doc["checks"])
