"""Shared test helpers: admissible chain parameters and small Gram builders."""
from __future__ import annotations

import itertools

from fixdiv.deduction import chain_gram
from fixdiv.lattice import GramLattice, signature


def admissible_chain_params(k_values, d_values):
    """All (k, d, q_last) with even q_last in [d/2, -1] whose chain Gram is
    nondegenerate of signature (1, 0, k+1); the configuration invariants
    reject the remaining parameter combinations."""
    out = []
    for k, d in itertools.product(k_values, d_values):
        for q_last in range(-2, d // 2 - 1, -2):
            g = chain_gram(k, d, q_last)
            if signature(g).as_tuple() == (1, 0, k + 1):
                out.append((k, d, q_last))
    return out


def gram(rows, mode="even") -> GramLattice:
    return GramLattice.from_rows(rows, mode=mode)
