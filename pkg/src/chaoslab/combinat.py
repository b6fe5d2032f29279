"""Combinatorial constants shared by the moment and bound modules."""

from __future__ import annotations

import math

from .errors import DomainError


def gamma_m(m: int) -> float:
    """2 (2m-1)! sum_{r=1..m} r! C(m,r)^2, as an exact float.

    Controls how much of the tensor-square norm the diagonal part can
    carry relative to the worst coordinate influence.
    """
    if m < 1:
        raise DomainError(f"order must be >= 1, got {m}")
    total = sum(math.factorial(r) * math.comb(m, r) ** 2 for r in range(1, m + 1))
    return float(2 * math.factorial(2 * m - 1) * total)
