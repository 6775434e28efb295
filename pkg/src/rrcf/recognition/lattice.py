"""Integer relations among reals by LLL reduction.

The reduction itself is delegated to FLINT (``fmpz_mat.lll``); this module only
builds the lattice and reads relations back out.
"""

from __future__ import annotations

from typing import Sequence

import flint
from mpmath import mp, mpf


def relation_lattice(values: Sequence[mpf], scale_digits: int) -> list[list[int]]:
    """Rows [e_i | round(values[i] * 10^scale_digits)] for i = 0..k-1."""
    k = len(values)
    scale = mpf(10) ** scale_digits
    rows = []
    for i, v in enumerate(values):
        row = [0] * (k + 1)
        row[i] = 1
        row[k] = int(mp.nint(v * scale))
        rows.append(row)
    return rows


def lll_reduce(rows: list[list[int]]) -> list[list[int]]:
    reduced = flint.fmpz_mat(rows).lll()
    return [[int(reduced[i, j]) for j in range(reduced.ncols())] for i in range(reduced.nrows())]


def integer_relations(values: Sequence[mpf], scale_digits: int) -> list[list[int]]:
    """Candidate integer relations among ``values``, shortest first.

    Each returned list has one integer per input value; the caller decides
    whether a candidate is an actual relation.
    """
    k = len(values)
    return [row[:k] for row in lll_reduce(relation_lattice(values, scale_digits)) if any(row[:k])]
