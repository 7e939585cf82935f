"""Brute-force embedding oracle: witnesses, exhaustion, canonicalization."""
from __future__ import annotations

import itertools

import pytest

from fixdiv.embedding_oracle import (
    AMBIENT,
    EmbeddingOracle,
    _signed_perm_key,
    even_grams,
)
from fixdiv.lattice import GramLattice, lorentzian_embeddable


@pytest.fixture(scope="module")
def oracle():
    return EmbeddingOracle()


def ambient_pairing(u, v):
    return sum(u[i] * AMBIENT[i][j] * v[j] for i in range(5) for j in range(5))


# -- witnesses -------------------------------------------------------------------


@pytest.mark.parametrize(
    "rows",
    [
        [[0, 2], [2, -4]],
        [[0, 1], [1, -2]],
        [[-2]],
        [[0]],
        [[0, 2, 0], [2, -4, 2], [0, 2, -2]],  # chain Gram (k=1, d=-4, q_last=-2)
    ],
)
def test_search_returns_verified_witness(rows, oracle):
    witness = oracle.search(rows)
    assert witness is not None
    for i in range(len(rows)):
        for j in range(len(rows)):
            assert ambient_pairing(witness[i], witness[j]) == rows[i][j]


def test_search_exhausts_non_embeddable_tables(oracle):
    assert oracle.search([[2, 0], [0, 0]]) is None
    assert oracle.search([[0, 0], [0, 0]]) is None
    assert oracle.search([[2, 0], [0, 2]]) is None


def test_verdict_reports_basis(oracle):
    ok, how = oracle.verdict(GramLattice.from_rows([[0, 2], [2, -4]]))
    assert ok and how == "witness"
    ok, how = oracle.verdict(GramLattice.from_rows([[2, 0], [0, 0]]))
    assert not ok and how == "exhausted"


def test_subtable_pruning_rejects_supertables(oracle):
    # contains the [[2,0],[0,0]] subtable, so no search is needed
    rows = [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    assert not oracle.has_embedding(rows)


# -- canonicalization ------------------------------------------------------------


def test_signed_perm_key_invariance():
    rows = [[0, 2, 1], [2, -4, 0], [1, 0, -2]]
    base = _signed_perm_key(rows)
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            image = [
                [signs[i] * signs[j] * rows[perm[i]][perm[j]] for j in range(3)]
                for i in range(3)
            ]
            assert _signed_perm_key(image) == base


def test_even_grams_yields_distinct_classes():
    classes = list(even_grams(2, 2))
    keys = [_signed_perm_key(rows) for rows in classes]
    assert len(keys) == len(set(keys))
    # every even rank-2 table with entries in [-2, 2] reduces to one of them
    key_set = set(keys)
    for a in (-2, 0, 2):
        for b in (-2, 0, 2):
            for p in range(-2, 3):
                assert _signed_perm_key([[a, p], [p, b]]) in key_set


def test_orbit_representatives_preserve_witnesses(oracle):
    # the depth-0 orbit filter must not lose embeddable tables whose natural
    # witness starts with a non-canonical vector
    rows = [[-2, 1], [1, -2]]
    assert oracle.search(rows) is not None


# -- agreement with the signature criterion --------------------------------------


@pytest.mark.parametrize("rank", [1, 2])
def test_agreement_small_ranks(rank, oracle):
    for rows in even_grams(rank, 4):
        fast = lorentzian_embeddable(GramLattice.from_rows(rows))
        slow, _ = oracle.verdict(GramLattice.from_rows(rows))
        assert fast == slow, rows
