"""Shared helpers: instance generators and slow independent oracles.

The oracles here deliberately avoid the library's vectorized paths: they
loop over outcomes and tuples directly, so agreement with the fast
engines is meaningful.
"""

from __future__ import annotations

import math
from itertools import permutations, product

import numpy as np
import pytest

from chaoslab import (
    ChaosVector,
    Kernel,
    RademacherModel,
    enumerate_outcomes,
    evaluate_integral,
    random_kernel,
)


def random_model(rng, n, lo=0.1, hi=0.9) -> RademacherModel:
    return RademacherModel(tuple(float(x) for x in rng.uniform(lo, hi, n)))


def random_instance(rng, m_max=3, n_max=10, normalized=True):
    m = int(rng.integers(1, m_max + 1))
    n = int(rng.integers(max(m + 1, 4), n_max + 1))
    model = random_model(rng, n)
    return model, random_kernel(m, n, rng, normalized=normalized)


def random_chaos(rng, n, top=2, centered=True) -> ChaosVector:
    parts = [Kernel(0, n, {} if centered else {(): float(rng.standard_normal())})]
    for r in range(1, top + 1):
        parts.append(random_kernel(r, n, rng))
    return ChaosVector(n, tuple(parts))


def oracle_expectation(fn, model) -> float:
    """Plain python expectation: loop outcomes, no numpy reductions."""
    total = 0.0
    for outcome in enumerate_outcomes(model):
        total += outcome.weight * fn(outcome)
    return total


def oracle_integral_moment(kern, model, r) -> float:
    return oracle_expectation(
        lambda o: evaluate_integral(kern, o, model) ** r, model
    )


def oracle_stroock_coefficient(table_fn, model, subset) -> float:
    """E[F * prod Y_i] by outcome loop; table_fn maps Outcome -> value."""
    def fn(o):
        y = 1.0
        for i in subset:
            p = model.probs[i]
            y *= math.sqrt((1 - p) / p) if o.signs[i] == 1 else -math.sqrt(p / (1 - p))
        return table_fn(o) * y

    return oracle_expectation(fn, model)


def oracle_symmetrized_tensor_value(f: Kernel, g: Kernel, tup) -> float:
    """Average of f(x)g over all permutations of an explicit tuple."""
    m, n = f.order, g.order
    total = 0.0
    for perm in permutations(tup):
        total += f.value(perm[:m]) * g.value(perm[m:])
    return total / math.factorial(m + n)


def oracle_tensor_square_norms(f: Kernel, horizon: int) -> tuple[float, float]:
    """Full and diagonal-restricted squared norms of the symmetrized
    tensor square, by enumeration over all (2m)-tuples."""
    m = f.order
    full = 0.0
    diag = 0.0
    for tup in product(range(horizon), repeat=2 * m):
        v = oracle_symmetrized_tensor_value(f, f, tup)
        full += v * v
        if len(set(tup)) != len(tup):
            diag += v * v
    return full, diag


def assert_kernels_close(a: Kernel, b: Kernel, tol: float):
    keys = set(a.coeffs) | set(b.coeffs)
    gap = max((abs(a.value(k) - b.value(k)) for k in keys), default=0.0)
    assert gap <= tol, f"kernels differ by {gap}"


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
