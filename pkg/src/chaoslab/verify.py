"""Seeded property suite: every structural identity and inequality the
library is contractually required to satisfy, runnable as one report.

Each check draws its own deterministic generator from (seed, name), so
the report is reproducible byte for byte and insensitive to execution
order.  A check reports its worst residual and the threshold it must
stay under; informational checks carry no threshold and never fail.
"""

from __future__ import annotations

import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bounds, construct, distance, malliavin as mv, moments
from .chaos import (
    ChaosVector,
    ValueTable,
    conditional_expectation,
    expectation,
    integral_table,
    multiply,
    ou_semigroup,
    stroock_decompose,
    to_table,
    variance as table_variance,
)
from .combinat import gamma_m
from .config import Caps, DEFAULT_CAPS, worker_count
from .kernels import (
    Kernel,
    off_diagonal_defect,
    random_kernel,
    symmetrized_tensor,
    tensor_square_residual,
)
from .model import RademacherModel, normalized_value, sample_y_matrix, y_moment


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    threshold: float | None
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable[[np.random.Generator, Caps], tuple[float, float | None, str]]

    def run(self, seed: int, caps: Caps) -> CheckResult:
        rng = np.random.default_rng([seed, zlib.crc32(self.name.encode())])
        residual, threshold, detail = self.fn(rng, caps)
        passed = bool(threshold is None or residual <= threshold)
        return CheckResult(self.name, float(residual), threshold, passed, detail)


def _random_model(rng, n, lo=0.1, hi=0.9) -> RademacherModel:
    return RademacherModel(tuple(float(x) for x in rng.uniform(lo, hi, n)))


def _random_instance(rng, m_max=3, n_max=10) -> tuple[RademacherModel, Kernel]:
    m = int(rng.integers(1, m_max + 1))
    n = int(rng.integers(max(m + 1, 4), n_max + 1))
    model = _random_model(rng, n)
    return model, random_kernel(m, n, rng, normalized=True)


def _random_chaos(rng, n, top=2, centered=True) -> ChaosVector:
    parts = [Kernel(0, n, {} if centered else {(): float(rng.standard_normal())})]
    for r in range(1, top + 1):
        parts.append(random_kernel(r, n, rng))
    return ChaosVector(n, tuple(parts))


# -- model ------------------------------------------------------------------


def check_structure_identity(rng, caps):
    worst = 0.0
    for _ in range(50):
        p = float(rng.uniform(0.05, 0.95))
        for sign in (1, -1):
            y = normalized_value(p, sign)
            worst = max(worst, abs(y * y - 1.0 - y_moment(p, 3) * y))
    return worst, 1e-12, "Y^2 = 1 + skew * Y at both signs"


def check_enumeration_moments(rng, caps):
    worst = 0.0
    for _ in range(50):
        p = float(rng.uniform(0.05, 0.95))
        model = RademacherModel((p,))
        w = model.weights(caps)
        y = model.y_table(0)
        worst = max(worst, abs(float(w.sum()) - 1.0))
        for r in range(1, 5):
            worst = max(worst, abs(float(np.dot(w, y**r)) - y_moment(p, r)))
    return worst, 1e-12, "enumeration reproduces closed-form coordinate moments"


def check_sampling_consistency(rng, caps):
    p = float(rng.uniform(0.2, 0.8))
    model = RademacherModel((p, p, p))
    count = 200_000
    ys = sample_y_matrix(model, int(rng.integers(2**31)), count)
    q = 1 - p
    lam = y_moment(p, 4)
    e8 = p * (q / p) ** 4 + q * (p / q) ** 4
    se4 = math.sqrt((e8 - lam * lam) / count)
    worst = abs(float((ys[:, 0] ** 4).mean()) - lam) / (5 * se4)
    worst = max(worst, abs(float(ys[:, 1].mean())) / (5.0 / math.sqrt(count)))
    return worst, 1.0, "empirical moments within 5 standard errors"


# -- kernels ----------------------------------------------------------------


def check_influence_additivity(rng, caps):
    worst = 0.0
    for _ in range(20):
        model, f = _random_instance(rng)
        total = float(f.influence_vector().sum())
        direct = f.order * sum(v * v for v in f.coeffs.values())
        worst = max(worst, abs(total - direct))
        argmax = int(np.argmax(f.influence_vector()))
        through = sum(v * v for k, v in f.coeffs.items() if argmax in k)
        worst = max(worst, f.sup_influence() - through)
    return worst, 1e-12, "sum of influences = m * sum of squared coefficients"


def check_order_one_influence_chain(rng, caps):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 12))
        f = random_kernel(1, n, rng, normalized=True)
        sup = f.sup_influence()
        s4 = sum(v**4 for v in f.coeffs.values())
        worst = max(worst, sup * sup - s4, s4 - sup)
    return worst, 1e-12, "sup-influence^2 <= sum f^4 <= sup-influence at order 1"


def check_truncation(rng, caps):
    worst = 0.0
    for _ in range(20):
        _, f = _random_instance(rng)
        n = f.horizon
        a = int(rng.integers(1, n + 1))
        b = int(rng.integers(1, n + 1))
        lhs = f.truncate(a).truncate(b)
        rhs = f.truncate(min(a, b))
        keys = set(lhs.coeffs) | set(rhs.coeffs)
        worst = max(
            worst, max((abs(lhs.value(k) - rhs.value(k)) for k in keys), default=0.0)
        )
        last = 0.0
        for h in range(1, n + 1):
            cur = f.truncate(h).norm_sq()
            worst = max(worst, last - cur)
            last = cur
        worst = max(worst, abs(last - f.norm_sq()))
    return worst, 1e-12, "idempotent truncation; norms increase to the full norm"


# -- chaos ------------------------------------------------------------------


def check_integral_isometry(rng, caps):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        mf = int(rng.integers(1, 4))
        mg = int(rng.integers(1, 4))
        f = random_kernel(mf, n, rng)
        g = random_kernel(mg, n, rng)
        tf = integral_table(f, model, caps)
        tg = integral_table(g, model, caps)
        lhs = expectation(tf * tg, model, caps)
        rhs = math.factorial(mf) * f.inner(g) if mf == mg else 0.0
        scale = 1.0 + abs(rhs)
        worst = max(worst, abs(lhs - rhs) / scale, abs(expectation(tf, model, caps)))
    return worst, 1e-10, "E[J_m(f) J_n(g)] = delta_mn m! <f, g>"


def check_variance_decomposition(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, top=3, centered=False)
        t = to_table(F, model, caps)
        worst = max(worst, abs(table_variance(t, model, caps) - F.variance()) / (1 + F.variance()))
    return worst, 1e-10, "enumerated variance equals the sum of kernel norms"


def check_stroock_roundtrip(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, top=3, centered=False)
        t = to_table(F, model, caps)
        back = to_table(stroock_decompose(t, model, caps), model, caps)
        worst = max(worst, float(np.abs(back.values - t.values).max()))
        f = random_kernel(int(rng.integers(1, 4)), n, rng)
        dec = stroock_decompose(integral_table(f, model, caps), model, caps)
        for r in range(dec.top_order + 1):
            if r == f.order:
                keys = set(dec.kernel(r).coeffs) | set(f.coeffs)
                worst = max(
                    worst,
                    max((abs(dec.kernel(r).value(k) - f.value(k)) for k in keys), default=0.0),
                )
            else:
                worst = max(worst, max((abs(v) for v in dec.kernel(r).coeffs.values()), default=0.0))
    return worst, 1e-9, "extraction recovers kernels; reconstruction is exact"


def check_truncation_martingale(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        f = random_kernel(int(rng.integers(1, 4)), n, rng)
        h = int(rng.integers(1, n + 1))
        lhs = integral_table(f.truncate(h), model, caps)
        rhs = conditional_expectation(
            integral_table(f, model, caps), model, set(range(h)), caps
        )
        worst = max(worst, float(np.abs(lhs.values - rhs.values).max()))
    return worst, 1e-11, "truncated integral = conditional expectation on the head"


def check_semigroup(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 8))
        F = _random_chaos(rng, n, top=3, centered=False)
        s, t = float(rng.uniform(0, 2)), float(rng.uniform(0, 2))
        lhs = ou_semigroup(ou_semigroup(F, s), t)
        rhs = ou_semigroup(F, s + t)
        for r in range(F.top_order + 1):
            keys = set(lhs.kernel(r).coeffs) | set(rhs.kernel(r).coeffs)
            worst = max(
                worst,
                max((abs(lhs.kernel(r).value(k) - rhs.kernel(r).value(k)) for k in keys), default=0.0),
            )
    return worst, 1e-12, "composition of heat flows adds times"


def check_product_top_kernel(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(5, 8))
        model = _random_model(rng, n)
        mf = int(rng.integers(1, 3))
        mg = int(rng.integers(1, 3))
        f = random_kernel(mf, n, rng)
        g = random_kernel(mg, n, rng)
        prod = multiply(
            ChaosVector.from_kernel(f), ChaosVector.from_kernel(g), model, caps
        )
        top = prod.kernel(mf + mg)
        ref = symmetrized_tensor(f, g).diagonal_free()
        keys = set(top.coeffs) | set(ref.coeffs)
        worst = max(
            worst, max((abs(top.value(k) - ref.value(k)) for k in keys), default=0.0)
        )
        for r in range(mf + mg + 1, prod.top_order + 1):
            worst = max(worst, max((abs(v) for v in prod.kernel(r).coeffs.values()), default=0.0))
    return worst, 1e-10, "top product kernel is the off-diagonal symmetrized tensor"


# -- malliavin ---------------------------------------------------------------


def check_carre_du_champ(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n)
        G = _random_chaos(rng, n)
        tf, tg = to_table(F, model, caps), to_table(G, model, caps)
        g = mv.gamma(F, G, model, caps)
        g0 = mv.gamma0(tf, tg, model)
        scale = 1.0 + tf.max_abs() * tg.max_abs()
        worst = max(worst, float(np.abs(g.values - g0.values).max()) / scale)
    return worst, 1e-10, "spectral and pathwise squared fields agree pointwise"


def check_generator_adjoint(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        model = _random_model(rng, n)
        H = ValueTable(n, rng.standard_normal(2**n))
        G = _random_chaos(rng, n)
        tg = to_table(G, model, caps)
        lg = mv.ou_generator_pathwise(tg, model)
        lhs = expectation(H * lg, model, caps)
        rhs = -expectation(mv.gamma0(H, tg, model), model, caps)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    return worst, 1e-10, "the generator is the negative adjoint of the squared field"


def check_gradient_skorohod_link(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 9))
        F = _random_chaos(rng, n, top=3)
        lhs = mv.skorohod(mv.gradient_process(F), _random_model(rng, n), caps)
        rhs = mv.ou_generator_spectral(F).scale(-1.0)
        for r in range(max(lhs.top_order, rhs.top_order) + 1):
            keys = set(lhs.kernel(r).coeffs) | set(rhs.kernel(r).coeffs)
            worst = max(
                worst,
                max((abs(lhs.kernel(r).value(k) - rhs.kernel(r).value(k)) for k in keys), default=0.0),
            )
    return worst, 1e-10, "divergence of the gradient is the negative generator"


def check_skorohod_isometry(rng, caps):
    worst = 0.0
    for _ in range(8):
        n = int(rng.integers(4, 8))
        model = _random_model(rng, n)
        u = [_random_chaos(rng, n, top=2, centered=False) for _ in range(n)]
        du = mv.skorohod(u, model, caps)
        t_du = to_table(du, model, caps)
        lhs = moments.moment(t_du, 2, model, caps)
        ut = [to_table(c, model, caps) for c in u]
        rhs = sum(expectation(t * t, model, caps) for t in ut)
        for k in range(n):
            for l in range(n):
                dkl = mv.d(ut[l], k, model)
                dlk = mv.d(ut[k], l, model)
                term = expectation(dkl * dlk, model, caps)
                rhs += term if k != l else -term
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    return worst, 1e-9, "second moment of the divergence matches the isometry"


def check_skorohod_adjoint(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 8))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, top=2, centered=False)
        u = [_random_chaos(rng, n, top=2, centered=False) for _ in range(n)]
        tf = to_table(F, model, caps)
        du = to_table(mv.skorohod(u, model, caps), model, caps)
        lhs = expectation(tf * du, model, caps)
        rhs = sum(
            expectation(mv.d(tf, k, model) * to_table(u[k], model, caps), model, caps)
            for k in range(n)
        )
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(lhs)))
    return worst, 1e-10, "duality pairing of gradient and divergence"


def check_product_rules(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(3, 8))
        model = _random_model(rng, n)
        F = ValueTable(n, rng.standard_normal(2**n))
        G = ValueTable(n, rng.standard_normal(2**n))
        FG = F * G
        scale = 1.0 + F.max_abs() * G.max_abs()
        for k in range(n):
            lhs = mv.d(FG, k, model)
            x = model.signs_table(k)
            rhs = (
                F * mv.d(G, k, model)
                + G * mv.d(F, k, model)
                - ValueTable(n, x / model.sqrt_pq[k])
                * mv.d(F, k, model)
                * mv.d(G, k, model)
            )
            worst = max(worst, float(np.abs(lhs.values - rhs.values).max()) / scale)
            for op in (mv.d_plus, mv.d_minus):
                lhs2 = op(FG, k)
                rhs2 = G * op(F, k) + F * op(G, k) + op(F, k) * op(G, k)
                worst = max(worst, float(np.abs(lhs2.values - rhs2.values).max()) / scale)
    return worst, 1e-11, "gradient and one-sided difference product rules"


def check_difference_power_identities(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(3, 7))
        F = ValueTable(n, rng.standard_normal(2**n))
        F2, F3 = F * F, F * F * F
        scale = 1.0 + F.max_abs() ** 3
        for k in range(n):
            for op in (mv.d_plus, mv.d_minus):
                dF = op(F, k)
                worst = max(
                    worst,
                    float(np.abs((op(F2, k) - (dF * dF + 2.0 * F * dF)).values).max()) / scale,
                    float(
                        np.abs(
                            (op(F3, k) - (dF * dF * dF + 3.0 * F * F * dF + 3.0 * F * dF * dF)).values
                        ).max()
                    )
                    / scale,
                )
    return worst, 1e-11, "one-sided differences of squares and cubes"


def check_covariance_representation(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(4, 8))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, centered=False)
        G = _random_chaos(rng, n, centered=False)
        tf, tg = to_table(F, model, caps), to_table(G, model, caps)
        cov = expectation(tf * tg, model, caps) - expectation(tf, model, caps) * expectation(tg, model, caps)
        centered = F.map_kernels(lambda r, k: k.scale(0.0) if r == 0 else k)
        linv = mv.pseudo_inverse(centered)
        rhs = -expectation(mv.gamma(G, linv, model, caps), model, caps)
        worst = max(worst, abs(cov - rhs) / (1.0 + abs(cov)))
    return worst, 1e-10, "covariance through the inverse generator"


def check_gradient_independence(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(3, 8))
        model = _random_model(rng, n)
        F = ValueTable(n, rng.standard_normal(2**n))
        idx = np.arange(2**n)
        for k in range(n):
            dk = mv.d(F, k, model).values
            worst = max(worst, float(np.abs(dk[idx ^ (1 << k)] - dk).max()))
    return worst, 0.0, "the k-gradient never depends on coordinate k"


def check_generator_eigenvalue(rng, caps):
    worst = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        t = integral_table(f, model, caps)
        lp = mv.ou_generator_pathwise(t, model)
        worst = max(
            worst,
            float(np.abs(lp.values + f.order * t.values).max()) / (1.0 + t.max_abs()),
            abs(expectation(lp, model, caps)),
        )
        g = mv.gamma0(t, t, model)
        worst = max(
            worst,
            abs(expectation(g, model, caps) - f.order * table_variance(t, model, caps))
            / (1.0 + f.order),
        )
    return worst, 1e-10, "pure integrals are eigenfunctions; field mean = m Var"


# -- moments -----------------------------------------------------------------


def check_dual_engine(rng, caps):
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(max(m + 1, 4), 10))
        model = _random_model(rng, n)
        f = random_kernel(m, n, rng, normalized=True, density=0.6)
        t = integral_table(f, model, caps)
        e1 = moments.moment(t, 4, model, caps)
        e2 = moments.fourth_moment_factorized(f.to_subset_coeffs(), model, caps)
        worst = max(worst, abs(e1 - e2) / abs(e1))
    return worst, 1e-9, "quadruple expansion matches enumeration"


def check_symmetric_engine(rng, caps):
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(max(m + 1, 4), 10))
        model = RademacherModel.symmetric(n)
        f = random_kernel(m, n, rng, normalized=True, density=0.7)
        t = integral_table(f, model, caps)
        e1 = moments.moment(t, 4, model, caps)
        e2 = moments.fourth_moment_symmetric(f.to_subset_coeffs())
        worst = max(worst, abs(e1 - e2) / abs(e1))
    return worst, 1e-10, "pair-class engine matches enumeration on fair coins"


def check_projection_variance_bound(rng, caps):
    worst = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        pv = moments.var_projection_sum(ChaosVector.from_kernel(f), model, caps)
        worst = max(worst, pv.total - pv.upper_bound)
    return worst, 1e-10, "projection variances stay under the closed bound"


def check_tensor_residual(rng, caps):
    worst = 0.0
    for _ in range(10):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(max(m + 1, 4), 9))
        f = random_kernel(m, n, rng)
        resid = tensor_square_residual(f)
        worst = max(worst, abs(resid) if m == 1 else -resid)
    return worst, 1e-10, "tensor square residual vanishes at order 1, positive above"


def check_off_diagonal_defect(rng, caps):
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(max(m + 1, 4), 9))
        f = random_kernel(m, n, rng)
        defect = off_diagonal_defect(f)
        lim = gamma_m(m) * f.norm_sq() * math.factorial(m) * f.sup_influence()
        worst = max(worst, defect - lim, -defect)
    return worst, 1e-10, "diagonal part of the tensor square obeys the influence bound"


def check_squared_field_variance(rng, caps):
    worst_eq = 0.0
    worst_ineq = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        vg = moments.var_gamma_normalized(ChaosVector.from_kernel(f), model, caps)
        worst_eq = max(worst_eq, abs(vg.value - vg.spectral) / (1.0 + vg.value))
        worst_ineq = max(worst_ineq, vg.value - vg.upper_bound)
    return max(worst_eq, worst_ineq), 1e-10, "field variance: spectral identity and closed bound"


def check_moment_field_inequalities(rng, caps):
    worst = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        F = ChaosVector.from_kernel(f)
        m = f.order
        t = to_table(F, model, caps)
        g = mv.gamma(F, F, model, caps)
        fourth = moments.moment(t, 4, model, caps)
        worst = max(
            worst,
            expectation(g * g, model, caps) / m**2 - fourth,
            expectation(t * t * g, model, caps) / m - fourth,
        )
    return worst, 1e-10, "field moments stay under the fourth moment"


def check_quartic_gradient(rng, caps):
    worst = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        F = ChaosVector.from_kernel(f)
        lhs, rhs = moments.quartic_gradient_identity(F, model, caps)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(lhs)))
        worst = max(worst, lhs - moments.quartic_gradient_bound(F, model, caps))
    return worst, 1e-9, "quartic gradient sum: identity and closed bound"


def check_indicator_pairing(rng, caps):
    worst = 0.0
    for _ in range(10):
        model, f = _random_instance(rng, n_max=9)
        F = ChaosVector.from_kernel(f)
        term = moments.kolmogorov_term(F, model, caps)
        worst = max(worst, -term, term - moments.kolmogorov_term_bound(F, model, caps))
    return worst, 1e-10, "indicator pairing is nonnegative and bounded"


# -- bounds ------------------------------------------------------------------


def check_constants(rng, caps):
    worst = 0.0
    worst = max(worst, abs(gamma_m(1) - 2.0), abs(gamma_m(2) - 72.0), abs(gamma_m(3) - 7920.0))
    c1, c2 = bounds.wasserstein_constants(1)
    worst = max(worst, abs(c1 - (math.sqrt(2 / math.pi) / 2 + 1)))
    worst = max(
        worst, abs(c2 - (math.sqrt(2 / math.pi) / 2 + math.sqrt(3)) * math.sqrt(2))
    )
    k1, k2, k3, k4 = bounds.kolmogorov_constants(1)
    worst = max(worst, abs(k1 - 1.5), abs(k2 - 0.5))
    prev = 0.0
    for m in range(1, 9):
        g = gamma_m(m)
        if g <= prev:
            worst = max(worst, prev - g + 1.0)
        prev = g
    return worst, 1e-12, "explicit constants and strictly increasing gamma sequence"


def check_bound_validity(rng, caps):
    worst = 0.0
    for _ in range(10):
        m = int(rng.integers(1, 4))
        n = int(rng.integers(max(m + 1, 4), 11))
        model = _random_model(rng, n)
        f = random_kernel(m, n, rng, normalized=True)
        F = ChaosVector.from_kernel(f)
        rw = bounds.theorem_bound_wasserstein(F, model, caps)
        rk = bounds.theorem_bound_kolmogorov(F, model, caps)
        worst = max(worst, -rw.slack, -rk.slack)
        ab = bounds.abstract_bounds(F, model, caps)
        worst = max(
            worst,
            rk.exact_distance - ab["kolmogorov_line1"],
            ab["kolmogorov_line1"] - ab["kolmogorov_line2"],
            rw.exact_distance - ab["wasserstein_line1"],
            ab["wasserstein_line1"] - ab["wasserstein_line2"],
        )
    return worst, 0.0, "exact distances never exceed any bound line"


def check_hoeffding(rng, caps):
    worst = 0.0
    for _ in range(6):
        m = int(rng.integers(1, 3))
        n = int(rng.integers(max(m + 1, 4), 8))
        model = _random_model(rng, n)
        f = random_kernel(m, n, rng, normalized=True)
        W = integral_table(f, model, caps)
        H = bounds.hoeffding_decompose(W, model, caps)
        worst = max(worst, float(np.abs(H.reconstruct().values - W.values).max()))
        a = f.to_subset_coeffs()
        for J, t in H.components.items():
            if len(J) == m:
                y = np.ones(2**n)
                for i in J:
                    y = y * model.y_table(i)
                worst = max(worst, float(np.abs(t.values - a.get(J, 0.0) * y).max()))
            elif J != ():
                worst = max(worst, t.max_abs())
        # orthogonality of conditioning: E[W_J | coords in K] = 0 unless J <= K
        comps = [J for J in H.components if J != ()]
        for _ in range(10):
            J = comps[int(rng.integers(len(comps)))]
            K = tuple(
                sorted(
                    int(i)
                    for i in rng.choice(n, size=int(rng.integers(0, n)), replace=False)
                )
            )
            if set(J) <= set(K):
                continue
            ce = conditional_expectation(H.components[J], model, set(K), caps)
            worst = max(worst, ce.max_abs())
        # random non-integral functional still reconstructs
        T = ValueTable(n, rng.standard_normal(2**n))
        H2 = bounds.hoeffding_decompose(T, model, caps)
        worst = max(worst, float(np.abs(H2.reconstruct().values - T.values).max()))
    return worst, 1e-9, "components reconstruct, localize, and kill conditioning"


def check_dejong_ratio(rng, caps):
    model, f = _random_instance(rng, m_max=2, n_max=8)
    W = integral_table(f, model, caps)
    H = bounds.hoeffding_decompose(W, model, caps)
    rho2 = bounds.rho_squared(H, model, caps)
    ref = math.factorial(f.order) ** 2 * f.sup_influence()
    ratio = rho2 / ref if ref else math.nan
    return abs(ratio - 1.0), None, f"rho^2 / ((m!)^2 sup-influence) = {ratio!r} (informational)"


# -- distance ----------------------------------------------------------------


def check_distance_sanity(rng, caps):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(2, 8))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, centered=False)
        t = to_table(F, model, caps)
        law = distance.exact_distribution(t, model, caps)
        worst = max(worst, abs(float(law.probs.sum()) - 1.0))
        dk = distance.kolmogorov_to_normal(law)
        dw = distance.wasserstein_to_normal(law)
        worst = max(worst, -dk, dk - 1.0, -dw)
        c = float(rng.uniform(-1, 1))
        worst = max(
            worst, distance.wasserstein_to_normal(law.shift(c)) - dw - abs(c)
        )
    return worst, 1e-11, "law sanity, distance ranges, shift inequality"


def check_empirical_distance(rng, caps):
    worst = 0.0
    for _ in range(3):
        n = int(rng.integers(2, 6))
        model = _random_model(rng, n)
        F = _random_chaos(rng, n, centered=False)
        t = to_table(F, model, caps)
        law = distance.exact_distribution(t, model, caps)
        dk = distance.kolmogorov_to_normal(law)
        N = 100_000
        draws = sample_y_matrix(model, int(rng.integers(2**31)), N)
        # evaluate F at sampled outcomes via the table
        plus = draws > 0
        idx = np.zeros(N, dtype=np.int64)
        for k in range(n):
            idx |= plus[:, k].astype(np.int64) << k
        samples = t.values[idx]
        dk_hat, _, half = distance.empirical_distances(samples)
        worst = max(worst, abs(dk_hat - dk) - 3.0 * half)
    return worst, 0.0, "empirical distance stays inside the DKW envelope"


def check_normal_cdf(rng, caps):
    worst = abs(distance.normal_cdf(0.0) - 0.5)
    xs = rng.uniform(-8, 8, 200)
    for x in xs:
        worst = max(worst, abs(distance.normal_cdf(-x) - (1.0 - distance.normal_cdf(x))))
    grid = np.sort(xs)
    vals = [distance.normal_cdf(float(x)) for x in grid]
    worst = max(worst, max((vals[i] - vals[i + 1] for i in range(len(vals) - 1)), default=0.0))
    return worst, 1e-15, "CDF symmetry, monotonicity, exact center"


# -- construct ---------------------------------------------------------------


def check_counterexamples(rng, caps):
    worst = 0.0
    for m in (1, 2, 3):
        model, kern = construct.inhomogeneous_counterexample(m, "+")
        t = integral_table(kern, model, caps)
        worst = max(
            worst,
            abs(moments.moment(t, 2, model, caps) - 1.0),
            abs(moments.moment(t, 4, model, caps) - 3.0),
        )
        law = distance.exact_distribution(t, model, caps)
        dk = distance.kolmogorov_to_normal(law)
        worst = max(worst, 0.0 if dk > 0.05 else 0.05 - dk)
    kern, trace = construct.symmetric_counterexample(2, 4)
    model = RademacherModel.symmetric(4)
    t = integral_table(kern, model, caps)
    worst = max(
        worst,
        abs(moments.moment(t, 2, model, caps) - 1.0),
        abs(moments.moment(t, 4, model, caps) - 3.0),
        abs(trace.endpoint_high - 14.0 / 3.0),
        abs(trace.endpoint_low - 7.0 / 3.0),
    )
    F = ChaosVector.from_kernel(kern)
    rep = bounds.theorem_bound_kolmogorov(F, model, caps)
    worst = max(worst, -rep.slack)
    return worst, 1e-9, "constructed families keep exact moments; bounds still hold"


def check_order_one_mechanism(rng, caps):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 10))
        p = float(rng.uniform(0.1, 0.9))
        model = RademacherModel.homogeneous(p, n)
        f = random_kernel(1, n, rng, normalized=True)
        lhs, rhs = construct.order_one_identity_check(f, model, caps)
        worst = max(worst, abs(lhs - rhs))
    return worst, 1e-10, "order-1 fourth moment excess factors through lambda - 3"


def check_remark_sequence(rng, caps):
    worst = 0.0
    for n in (8, 10, 12):
        kern, model = construct.product_chaos_sequence(2, n)
        worst = max(worst, abs(kern.sup_influence() - 0.25))
        t = integral_table(kern, model, caps)
        worst = max(worst, abs(moments.moment(t, 4, model, caps) - (3.0 - 2.0 / (n - 1))))
    return worst, 1e-10, "bounded-influence sequence: influence and moment formulas"


CHECKS: tuple[Check, ...] = tuple(
    Check(fn.__name__.removeprefix("check_"), fn)
    for fn in [
        check_structure_identity,
        check_enumeration_moments,
        check_sampling_consistency,
        check_influence_additivity,
        check_order_one_influence_chain,
        check_truncation,
        check_integral_isometry,
        check_variance_decomposition,
        check_stroock_roundtrip,
        check_truncation_martingale,
        check_semigroup,
        check_product_top_kernel,
        check_carre_du_champ,
        check_generator_adjoint,
        check_gradient_skorohod_link,
        check_skorohod_isometry,
        check_skorohod_adjoint,
        check_product_rules,
        check_difference_power_identities,
        check_covariance_representation,
        check_gradient_independence,
        check_generator_eigenvalue,
        check_dual_engine,
        check_symmetric_engine,
        check_projection_variance_bound,
        check_tensor_residual,
        check_off_diagonal_defect,
        check_squared_field_variance,
        check_moment_field_inequalities,
        check_quartic_gradient,
        check_indicator_pairing,
        check_constants,
        check_bound_validity,
        check_hoeffding,
        check_dejong_ratio,
        check_distance_sanity,
        check_empirical_distance,
        check_normal_cdf,
        check_counterexamples,
        check_order_one_mechanism,
        check_remark_sequence,
    ]
)


def run_suite(seed: int = 0, caps: Caps = DEFAULT_CAPS, names: list[str] | None = None) -> list[CheckResult]:
    selected = [c for c in CHECKS if names is None or c.name in names]
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: c.run(seed, caps), selected))
    else:
        results = [c.run(seed, caps) for c in selected]
    return sorted(results, key=lambda r: r.name)
