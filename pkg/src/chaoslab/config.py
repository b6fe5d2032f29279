"""Size caps and tunables.

Every cap guards an exact computation whose cost is exponential in the
horizon (or quartic in support size); the defaults keep the full identity
suite at desk scale.  All functions that enforce a cap accept an explicit
``Caps`` so callers can raise or lower limits per call.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    # full 2**n outcome enumeration (tables, exact laws, moments)
    enum_cap: int = 24
    # chaos extraction touches all 2**n coefficient slots; kept lower
    # because downstream consumers iterate the resulting kernels
    stroock_cap: int = 14
    # quadruple expansion of the factorized fourth moment is O(S**4)
    # in the number S of support subsets
    factorized_support_cap: int = 60
    # success probabilities are clamped away from {0, 1} so sqrt(p/q)
    # stays representable
    prob_floor: float = 1e-6
    # constant in the degenerate U-statistic bound; not determined by
    # theory, reported but never asserted against
    kappa_m: float = 1.0


DEFAULT_CAPS = Caps()


def with_enum_cap(caps: Caps, enum_cap: int) -> Caps:
    return replace(caps, enum_cap=enum_cap)


def worker_count(requested: int | None = None) -> int:
    """Worker count for embarrassingly parallel suites.

    ``CHAOSLAB_THREADS`` caps the result; unset means no cap.
    """
    want = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get("CHAOSLAB_THREADS")
    if cap is not None:
        try:
            want = min(want, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, want)
