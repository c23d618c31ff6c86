"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with its runtime (run with ``pytest -s`` to see them inline).

Two criteria encode claims that exact arithmetic contradicts; they are kept
verbatim and marked strict-xfail, with companion tests pinning the true
values so the disagreement is attributable:

* the power-curve mse band edge at nu = 1.5 (exact value 0.0119 > 0.011);
* the constant factor staying inside (0, 1) (its true maximum is ~1.00396
  near nu = 0.933, and it equals 1 exactly at nu = 1).
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest
from fastapi.testclient import TestClient

from maternkit.analysis import (
    equivalence_growth,
    fit_mle,
    microergodic,
    power_curve_mse,
    profile_ridge,
    swap_difference,
)
from maternkit.conditional_joint import build_joint, build_tent, default_grid, matern32_params
from maternkit.covariance import (
    PointSet,
    cholesky_with_jitter,
    correlation_matrix,
    sample_gaussian_process,
)
from maternkit.kernel import (
    MaternParams,
    Parametrization,
    closed_form_corr,
    gaussian_limit_corr,
    matern_corr,
)
from maternkit.server import create_app
from maternkit.special_functions import bessel_k, constant_part

mp.mp.dps = 30


class Timer:
    def __init__(self, name: str, limit: float):
        self.name = name
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[ACCEPTANCE] {self.name}: {status} ({elapsed:.2f}s, limit {self.limit:.0f}s)")
        if exc_type is None:
            assert elapsed < self.limit, f"{self.name} exceeded runtime limit"
        return False


def simulate(params, pts, seed):
    cov = params.sigma2 * correlation_matrix(params, pts).values
    factor = cholesky_with_jitter(cov)
    return sample_gaussian_process(factor, seed=seed, n_draws=1)[0]


def test_closed_form_equivalence():
    with Timer("closed-form equivalence", 5.0):
        d = np.arange(1, 2001) * 0.01
        for p, nu in ((0, 0.5), (1, 1.5), (2, 2.5)):
            for rho in (0.1, 1.0, 10.0):
                params = MaternParams(nu=nu, scale=rho)
                gap = np.abs(matern_corr(params, d) - closed_form_corr(p, params, d))
                assert np.max(gap) <= 1e-10, (nu, rho, np.max(gap))


def test_bessel_recurrence_and_half_integer_sums():
    with Timer("bessel recurrence + half-integer sums", 5.0):
        zs = np.logspace(math.log10(0.01), math.log10(30.0), 50)
        for nu in np.arange(1.0, 20.0 + 0.25, 0.5):
            km = bessel_k(nu - 1.0, zs)
            k0 = bessel_k(nu, zs)
            kp = bessel_k(nu + 1.0, zs)
            resid = np.abs(kp - km - (2.0 * nu / zs) * k0) / kp
            assert np.max(resid) <= 1e-8, (nu, np.max(resid))
        for p in (0, 1, 2):
            nu = p + 0.5
            for z in zs:
                s = sum(
                    math.factorial(p + r)
                    / (math.factorial(r) * math.factorial(p - r) * (2.0 * z) ** r)
                    for r in range(p + 1)
                )
                expect = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) * s
                assert bessel_k(nu, float(z)) == pytest.approx(expect, rel=1e-12)


@pytest.mark.xfail(
    strict=True,
    reason="band-edge defect: the exact mse at nu = 1.5 is "
    "1/4 - 2/3.5 + 1/3 = 0.011905 > 0.011, so the stated band cannot close "
    "at its upper edge (see test_power_band_edge_exact_value)",
)
def test_power_curve_mse_band():
    with Timer("power-curve mse band", 1.0):
        for nu in np.arange(0.7, 1.501, 0.1):
            assert power_curve_mse(round(float(nu), 1)) <= 0.011, nu
        for nu in [0.1, 0.2, 0.3, 0.4, 0.5, 1.9, 2.0]:
            assert power_curve_mse(nu) > 0.011, nu


def test_power_band_edge_exact_value():
    # pins the defect: the implementation agrees with exact integration at
    # the contested edge, and every other band point clears the threshold
    exact = 1.0 / 4.0 - 2.0 / 3.5 + 1.0 / 3.0  # 0.011904761...
    assert power_curve_mse(1.5) == pytest.approx(exact, abs=1e-6)
    assert exact > 0.011
    for nu in (0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4):
        assert power_curve_mse(nu) <= 0.011
    for nu in (0.1, 0.2, 0.3, 0.4, 0.5, 1.9, 2.0):
        assert power_curve_mse(nu) > 0.011


@pytest.mark.xfail(
    strict=True,
    reason="open-interval defect: 2^(1-nu)/Gamma(nu) equals 1 at nu = 1 and "
    "peaks at ~1.0039569 near nu = 0.933, so it leaves (0, 1) for nu in "
    "roughly [0.87, 1.0] (see test_constant_part_true_extremes)",
)
def test_constant_part_decay_band():
    with Timer("constant-part decay band", 1.0):
        vals = constant_part(np.arange(1, 500) * 0.01)
        assert np.all(vals > 0.0)
        assert np.all(vals < 1.0)
        assert np.all(constant_part(np.arange(50, 101) * 0.1) <= 0.01)


def test_constant_part_true_extremes():
    # pins the defect against the high-precision oracle
    grid = np.arange(1, 500) * 0.01
    vals = constant_part(grid)
    assert np.all(vals > 0.0)
    assert float(np.max(vals)) == pytest.approx(1.0039545, abs=1e-5)  # at nu = 0.94
    peak = float(2 ** (1 - mp.mpf("0.933")) / mp.gamma(mp.mpf("0.933")))
    assert peak > 1.0
    over = grid[vals >= 1.0]
    assert over.min() == pytest.approx(0.87, abs=0.011)
    assert over.max() == pytest.approx(1.0, abs=1e-12)
    # the large-order tail claim holds as stated
    assert np.all(constant_part(np.arange(50, 101) * 0.1) <= 0.01)


def test_swap_table_reproduction():
    with Timer("swap-difference table", 10.0):
        for x in (0.5, 1.0, 2.5, 75.0):
            row = swap_difference(x, x)
            assert row.min_diff == 0.0 and row.max_diff == 0.0
        row = swap_difference(1.5, 1.0)
        assert max(abs(row.min_diff), abs(row.max_diff)) <= 0.12
        row = swap_difference(2.5, 20.0)
        assert 0.1 <= row.max_diff <= 0.4
        row = swap_difference(0.5, 75.0)
        assert 0.6 <= row.max_diff <= 0.9
        for nu, rho in ((1.5, 1.0), (2.5, 20.0), (0.5, 75.0), (0.1, 5.0)):
            fwd = swap_difference(nu, rho)
            rev = swap_difference(rho, nu)
            assert abs(fwd.max_diff + rev.min_diff) <= 1e-12
            assert abs(fwd.min_diff + rev.max_diff) <= 1e-12


def test_gaussian_limit():
    with Timer("gaussian limit at order 50", 2.0):
        params = MaternParams(
            nu=50.0, scale=1.0, parametrization=Parametrization.ML_LENGTH_SCALE
        )
        d = np.arange(0, 301) * 0.01
        sup = np.max(np.abs(matern_corr(params, d) - gaussian_limit_corr(params, d)))
        # oracle-fixed bound: the true sup is 4.5992e-3 (at d = 1.07)
        assert sup <= 0.005, sup


def test_joint_positive_definiteness():
    with Timer("conditional joint positive definiteness", 30.0):
        grid = default_grid(101)
        tent = build_tent(grid, h=0.4, beta=1.0)
        for k11, k21 in ((75.0, 1.5), (1.5, 75.0)):
            jc = build_joint(grid, matern32_params(k11), matern32_params(k21), tent)
            full = jc.assembled()
            assert np.linalg.eigvalsh(full)[0] >= -1e-8 * np.trace(full)
        rng = np.random.default_rng(2468)
        for _ in range(50):
            n = int(rng.integers(20, 121))
            sub = default_grid(n)
            k11 = float(10 ** rng.uniform(math.log10(0.5), 2.0))
            k21 = float(10 ** rng.uniform(math.log10(0.5), 2.0))
            beta = float(rng.uniform(-2.0, 2.0))
            h = float(rng.uniform(0.02, 1.0))
            tent_i = build_tent(sub, h=h, beta=beta)
            jc = build_joint(sub, matern32_params(k11), matern32_params(k21), tent_i)
            full = jc.assembled()
            assert np.linalg.eigvalsh(full)[0] >= -1e-8 * np.trace(full)


def test_joint_block_structure():
    with Timer("conditional joint block structure", 10.0):
        grid = default_grid(101)
        tent = build_tent(grid, h=0.4, beta=1.0)
        s = grid.coords[:, 0]
        lag = np.abs(s[:, None] - s[None, :])
        far = lag >= 0.2
        at02 = np.isclose(lag, 0.2)

        left = build_joint(grid, matern32_params(75.0), matern32_params(1.5), tent)
        assert np.max(left.c11[far]) < 0.01
        assert np.min(left.c22[at02]) > 0.5

        right = build_joint(grid, matern32_params(1.5), matern32_params(75.0), tent)
        assert np.min(right.c11[at02]) > 0.5
        remainder = right.c22 - right.tent.matrix @ right.c11 @ right.tent.matrix.T
        assert np.max(np.abs(remainder[far])) < 0.01


def test_inconsistency_demonstration():
    with Timer("inconsistency demonstration (KL growth + ridge)", 180.0):
        # equal microergodic value: KL stays under the oracle-fixed constant
        # (dense-grid value 0.221573, bound 0.25)
        a = MaternParams(nu=0.5, scale=2.0, sigma2=1.0, parametrization=Parametrization.DECAY)
        b = MaternParams(nu=0.5, scale=1.0, sigma2=2.0, parametrization=Parametrization.DECAY)
        kls_eq = equivalence_growth(a, b, sizes=(25, 50, 100, 200))
        assert np.all(kls_eq <= 0.25), kls_eq
        # unequal microergodic value: strictly increasing KL
        c_ = MaternParams(nu=0.5, scale=1.0, sigma2=1.0, parametrization=Parametrization.DECAY)
        kls_ne = equivalence_growth(a, c_, sizes=(25, 50, 100, 200))
        assert np.all(np.diff(kls_ne) > 0.0), kls_ne

        # flat-ridge probe: sweeping kappa over two decades at fixed
        # sigma2 kappa^(2 nu) moves the nll less than scaling that product
        # through [1/2, 2]; oracle-calibrated threshold 1.0, expected pass
        # rate 19/20 on these seeds
        truth = MaternParams(nu=0.5, scale=4.0, sigma2=1.0, parametrization=Parametrization.DECAY)
        c = microergodic(truth)
        pts = PointSet(np.linspace(0.0, 1.0, 1000))
        passed = 0
        for rep in range(20):
            y = simulate(truth, pts, seed=7000 + rep)
            prof = profile_ridge(0.5, c, y, pts, n_steps=15)
            if prof.variation_ratio() < 1.0:
                passed += 1
        print(f"[ACCEPTANCE]   ridge replicates below threshold: {passed}/20")
        assert passed >= 18, passed


def test_mle_sanity():
    with Timer("mle sanity (20 replicates, n=300)", 180.0):
        truth = MaternParams(nu=0.5, scale=4.0, sigma2=1.0, parametrization=Parametrization.DECAY)
        c = microergodic(truth)
        pts = PointSet(np.linspace(0.0, 1.0, 300))
        init = MaternParams(nu=0.5, scale=1.0, sigma2=2.0, parametrization=Parametrization.DECAY)
        rel_err, sig, kap = [], [], []
        for rep in range(20):
            y = simulate(truth, pts, seed=2000 + rep)
            fit = fit_mle(y, pts, nu_fixed=0.5, init=init)
            rel_err.append(abs(fit.microergodic_hat - c) / c)
            sig.append(fit.params_hat.sigma2)
            kap.append(fit.params_hat.scale)
        rel_err = np.asarray(rel_err)
        sig = np.asarray(sig)
        kap = np.asarray(kap)
        cv_sig = sig.std(ddof=1) / sig.mean()
        cv_kap = kap.std(ddof=1) / kap.mean()
        print(
            f"[ACCEPTANCE]   microergodic median rel err {np.median(rel_err):.3f}; "
            f"sigma2 dispersion {cv_sig:.2f}, kappa dispersion {cv_kap:.2f}"
        )
        # pre-calibrated: observed median 0.054 on these seeds
        assert np.median(rel_err) <= 0.15
        # the individual parameters stay poorly determined (flat ridge)
        assert cv_sig > 0.3
        assert cv_kap > 0.3


def test_service_determinism_and_validation():
    with Timer("service determinism", 1.0):
        client = TestClient(create_app())
        q = "/surface?nu=1.5&scale=2&param=range&resolution=31"
        r1 = client.get(q)
        r2 = client.get(q)
        assert r1.status_code == 200
        assert r1.content == r2.content
        assert client.get("/surface?nu=0&scale=1").status_code == 400
        assert client.get("/surface?nu=-3&scale=1").status_code == 400
