"""Discrete Malliavin operators on exact tables and chaos vectors.

Pathwise operators act on ``ValueTable`` entries through one-coordinate
flips; spectral operators act on ``ChaosVector`` kernels by scaling each
order.  At a finite horizon every functional has a finite decomposition,
so no domain conditions beyond horizon checks are needed.
"""

from __future__ import annotations

import numpy as np

from .chaos import (
    ChaosVector,
    ValueTable,
    multiply,
    to_table,
)
from .config import Caps, DEFAULT_CAPS
from .errors import DomainError
from .kernels import Kernel
from .model import RademacherModel

_AGREEMENT_TOL = 1e-11


def _check_coord(table: ValueTable, k: int) -> None:
    if not 0 <= k < table.horizon:
        raise DomainError(f"coordinate {k} out of range for horizon {table.horizon}")


def shift_plus(table: ValueTable, k: int) -> ValueTable:
    """Table of F with coordinate k forced to +1."""
    _check_coord(table, k)
    idx = np.arange(2**table.horizon)
    return ValueTable(table.horizon, table.values[idx | (1 << k)])


def shift_minus(table: ValueTable, k: int) -> ValueTable:
    """Table of F with coordinate k forced to -1."""
    _check_coord(table, k)
    idx = np.arange(2**table.horizon)
    return ValueTable(table.horizon, table.values[idx & ~(1 << k)])


def d_plus(table: ValueTable, k: int) -> ValueTable:
    """Forward difference F(k -> +1) - F."""
    return shift_plus(table, k) - table


def d_minus(table: ValueTable, k: int) -> ValueTable:
    """Backward difference F(k -> -1) - F."""
    return shift_minus(table, k) - table


def d(table: ValueTable, k: int, model: RademacherModel) -> ValueTable:
    """Gradient sqrt(p_k q_k) (F(k -> +1) - F(k -> -1)).

    Constant in coordinate k; equals sqrt(p_k q_k) (d_plus - d_minus).
    """
    _check_coord(table, k)
    if model.n != table.horizon:
        raise DomainError("model and table horizons differ")
    diff = shift_plus(table, k) - shift_minus(table, k)
    return float(model.sqrt_pq[k]) * diff


def gradient(table: ValueTable, model: RademacherModel) -> list[ValueTable]:
    return [d(table, k, model) for k in range(model.n)]


def ou_generator_pathwise(table: ValueTable, model: RademacherModel) -> ValueTable:
    """Generator of the number-operator semigroup, evaluated pathwise.

    Both representations are computed and cross-checked:
        -sum_k Y_k D_k F   and   sum_k (q_k D_k^- F + p_k D_k^+ F).
    """
    if model.n != table.horizon:
        raise DomainError("model and table horizons differ")
    n = table.horizon
    acc_y = np.zeros(2**n)
    acc_pm = np.zeros(2**n)
    for k in range(n):
        dk = d(table, k, model).values
        acc_y -= model.y_table(k) * dk
        acc_pm += model.q[k] * d_minus(table, k).values
        acc_pm += model.p[k] * d_plus(table, k).values
    scale = 1.0 + float(np.abs(table.values).max())
    gap = float(np.abs(acc_y - acc_pm).max())
    if gap > _AGREEMENT_TOL * scale:
        raise ArithmeticError(
            f"pathwise generator representations disagree by {gap:.3e}"
        )
    return ValueTable(n, acc_y)


def ou_generator_spectral(F: ChaosVector) -> ChaosVector:
    """Scale the order-r kernel by -r."""
    return F.map_kernels(lambda r, k: k.scale(-float(r)))


def pseudo_inverse(F: ChaosVector) -> ChaosVector:
    """Inverse of the generator on centered vectors: order r scales by -1/r.

    The order-0 part must vanish; a residue below rounding scale
    (1e-9 relative to the fluctuation size) is dropped silently.
    """
    mean = F.kernel(0).value(())
    scale = 1.0 + float(np.sqrt(max(F.variance(), 0.0)))
    if abs(mean) > 1e-9 * scale:
        raise DomainError(f"pseudo-inverse needs a centered input; mean is {mean}")
    return F.map_kernels(
        lambda r, k: k.scale(-1.0 / r) if r else k.scale(0.0)
    )


def minus_pseudo_inverse(F: ChaosVector) -> ChaosVector:
    return pseudo_inverse(F).scale(-1.0)


def gamma0(
    F: ValueTable, G: ValueTable, model: RademacherModel
) -> ValueTable:
    """Pathwise squared-field form built from one-coordinate differences.

    Primary form: (1/2) sum_k (q_k D_k^-F D_k^-G + p_k D_k^+F D_k^+G).
    The equivalent representation sum_k D_kF D_kG (1 + skew_k Y_k / 2)
    is evaluated alongside and must agree.
    """
    if F.horizon != G.horizon:
        raise DomainError("tables live on different horizons")
    if model.n != F.horizon:
        raise DomainError("model and table horizons differ")
    n = model.n
    acc = np.zeros(2**n)
    acc_y = np.zeros(2**n)
    for k in range(n):
        dm = d_minus(F, k).values * d_minus(G, k).values
        dp = d_plus(F, k).values * d_plus(G, k).values
        acc += 0.5 * (model.q[k] * dm + model.p[k] * dp)
        dd = d(F, k, model).values * d(G, k, model).values
        acc_y += dd * (1.0 + 0.5 * model.skew[k] * model.y_table(k))
    scale = 1.0 + F.max_abs() * G.max_abs()
    gap = float(np.abs(acc - acc_y).max())
    if gap > _AGREEMENT_TOL * scale:
        raise ArithmeticError(f"squared-field representations disagree by {gap:.3e}")
    return ValueTable(n, acc)


def gamma(
    F: ChaosVector,
    G: ChaosVector,
    model: RademacherModel,
    caps: Caps = DEFAULT_CAPS,
) -> ValueTable:
    """Carre du champ (1/2)(L(FG) - F LG - G LF), evaluated exactly.

    The product is decomposed through tables, the generator is applied
    spectrally, and the three pieces are re-evaluated pointwise.
    """
    prod = multiply(F, G, model, caps)
    l_prod = to_table(ou_generator_spectral(prod), model, caps)
    f_t = to_table(F, model, caps)
    g_t = to_table(G, model, caps)
    lf = to_table(ou_generator_spectral(F), model, caps)
    lg = to_table(ou_generator_spectral(G), model, caps)
    vals = 0.5 * (l_prod.values - f_t.values * lg.values - g_t.values * lf.values)
    return ValueTable(model.n, vals)


def skorohod(
    u: list[ChaosVector], model: RademacherModel, caps: Caps = DEFAULT_CAPS
) -> ChaosVector:
    """Adjoint of the gradient on chaos-vector-valued processes.

    For each component order r, the order-(r+1) output kernel at a subset
    T collects (1/(r+1)) sum_{k in T} g_k(T \\ {k}), i.e. the canonical
    symmetrization of k -> g_k restricted off the diagonal.  Coefficients
    of u_k on subsets containing k never contribute.
    """
    if len(u) != model.n:
        raise DomainError(f"need one process component per coordinate, got {len(u)}")
    for comp in u:
        if comp.horizon != model.n:
            raise DomainError("process components must live on the model horizon")
    n = model.n
    top = max(comp.top_order for comp in u)
    per_order: list[dict] = [dict() for _ in range(top + 2)]
    for k, comp in enumerate(u):
        for r in range(comp.top_order + 1):
            kern = comp.kernel(r)
            for key, val in kern.coeffs.items():
                if k in key:
                    continue
                target = tuple(sorted(key + (k,)))
                bucket = per_order[r + 1]
                bucket[target] = bucket.get(target, 0.0) + val / (r + 1)
    kernels = tuple(Kernel(r, n, per_order[r]) for r in range(top + 2))
    return ChaosVector(n, kernels).trimmed()


def gradient_process(F: ChaosVector) -> list[ChaosVector]:
    """The gradient as a chaos-vector process: component k holds D_k F.

    D_k of the order-r term is r J_{r-1}(f_r(k, .)); kernels of the
    component never mention coordinate k.
    """
    n = F.horizon
    out = []
    for k in range(n):
        per_order: list[dict] = [dict() for _ in range(max(F.top_order, 1))]
        for r in range(1, F.top_order + 1):
            kern = F.kernel(r)
            for key, val in kern.coeffs.items():
                if k not in key:
                    continue
                rest = tuple(i for i in key if i != k)
                bucket = per_order[r - 1]
                bucket[rest] = bucket.get(rest, 0.0) + r * val
        kernels = tuple(Kernel(r, n, per_order[r]) for r in range(len(per_order)))
        out.append(ChaosVector(n, kernels).trimmed())
    return out
