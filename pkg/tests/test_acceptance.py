"""Acceptance criteria 1-9; each test prints one PASS/FAIL line."""

import time
import warnings
from pathlib import Path

import numpy as np
import pytest

from framehomodyne.bogoliubov_delay import NAMES, rindler_delay_coeffs, rindler_delay_direct, unruh_time_coeffs
from framehomodyne.bogoliubov_mr import a_k_omega, default_omega_grid, unruh_norm, unruh_overlap
from framehomodyne.config import load_config
from framehomodyne.homodyne import cosine_fit, dominant_harmonic, harmonic_content, phase_grid
from framehomodyne.runner import analytic_traces, oracle_traces, run_sweep, trace_deviation
from framehomodyne.special_fn import gamma_complex

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def report(capsys):
    def emit(num, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_gamma_identity(report):
    t0 = time.perf_counter()
    x = np.logspace(-1, 1, 100)
    exact = np.pi * x / np.sinh(np.pi * x)
    err = float(np.max(np.abs(np.abs(gamma_complex(1 + 1j * x)) ** 2 - exact) / exact))
    dt = time.perf_counter() - t0
    report(1, "gamma identity", err < 1e-10 and dt < 1.0, f"max rel err {err:.2e} (< 1e-10), {dt:.3f} s (< 1 s)")


def test_criterion_2_magnitude_law(report):
    t0 = time.perf_counter()
    k = np.logspace(-2, 2, 20)[:, None]
    w = np.logspace(-2, 2, 20)[None, :]
    err = 0.0
    for a in (0.5, 1.0, 2.0):
        exact = 1.0 / (2 * np.pi * a * k)
        err = max(err, float(np.max(np.abs(np.abs(a_k_omega(k, w, a)) ** 2 - exact) / exact)))
    dt = time.perf_counter() - t0
    report(2, "magnitude law", err < 1e-10 and dt < 1.0, f"max rel err {err:.2e} (< 1e-10), {dt:.3f} s (< 1 s)")


def test_criterion_3_unruh_completeness(scenarios, report):
    sc = scenarios("fig7")
    t0 = time.perf_counter()
    errs = []
    for n in (2048, 4096, 8192):
        g = default_omega_grid(1.0, 1.0, n=n)
        A, B = unruh_overlap(sc.packet, g, 1.0, sc.source_grid)
        errs.append(abs(unruh_norm(A, B, g) - 1.0))
    dt = time.perf_counter() - t0
    ok = errs[0] < 1e-4 and errs[0] > errs[1] > errs[2] and dt < 30
    report(3, "Unruh completeness", ok,
           f"|C-1| = {errs[0]:.4e}, {errs[1]:.4e}, {errs[2]:.4e} at 1x/2x/4x (< 1e-4, decreasing), {dt:.1f} s")


def test_criterion_4_appendix_relations(report):
    t0 = time.perf_counter()
    a, t = 1.0, 2.5
    w = a * np.logspace(-1, np.log10(5.0), 16)
    wp = w * 1.0137  # offset keeps the 16 x 16 grid off the diagonal
    # Unruh-mode relations: A(+-|t|) = conj(D(-+|t|)), B(+-|t|) = conj(C(-+|t|))
    up, un = unruh_time_coeffs(w, wp, t, a), unruh_time_coeffs(w, wp, -t, a)
    scale_u = max(np.max(np.abs(v)) for v in (up.A, up.B, up.C, up.D))
    dev_u = max(float(np.max(np.abs(x - np.conj(y)))) for x, y in
                [(up.A, un.D), (un.A, up.D), (up.B, un.C), (un.B, up.C)]) / scale_u
    # Rindler relations on the direct route (which does not assume them)
    dp, dn = rindler_delay_direct(w, wp, t, a), rindler_delay_direct(w, wp, -t, a)
    pairs = [("alpha_a", "gamma_b"), ("gamma_a", "alpha_b"), ("beta_a", "delta_b"), ("delta_a", "beta_b")]
    scale_r = max(np.max(np.abs(v)) for v in dp.as_dict().values())
    dev_r = max(float(np.max(np.abs(getattr(s1, x) - np.conj(getattr(s2, y)))))
                for x, y in pairs for s1, s2 in ((dp, dn), (dn, dp))) / scale_r
    # the library's closed forms agree with the direct route at both signs
    dev_c = 0.0
    for tt, d in ((t, dp), (-t, dn)):
        c = rindler_delay_coeffs(w, wp, tt, a)
        dev_c = max(dev_c, max(float(np.max(np.abs(getattr(c, n) - getattr(d, n)))) for n in NAMES) / scale_r)
    c = rindler_delay_coeffs(w, wp, t, a)
    zeros = bool(np.all(c.gamma_a == 0) and np.all(c.delta_a == 0))
    dt = time.perf_counter() - t0
    ok = max(dev_u, dev_r, dev_c) < 1e-10 and zeros and dt < 10
    report(4, "appendix relations", ok,
           f"Unruh {dev_u:.1e}, Rindler {dev_r:.1e}, closed vs direct {dev_c:.1e} (< 1e-10); "
           f"gamma_a = delta_a = 0 exactly: {zeros}; {dt:.2f} s")


def test_criterion_5_ideal_structure(scenarios, report):
    t0 = time.perf_counter()
    details, ok = [], True
    for name in ("fig7", "fig9"):
        tr = analytic_traces(scenarios(name), phase_grid(256))
        xi_res = cosine_fit(tr["ideal"].phi, tr["ideal"].X)[3]
        xb_res = cosine_fit(tr["balanced"].phi, tr["balanced"].X)[3]
        vi, vb = np.ptp(tr["ideal"].V), np.ptp(tr["balanced"].V)
        ok &= xi_res < 1e-6 and vi < 1e-8 and vb < 1e-8 and xb_res < 1e-10
        details.append(f"{name}: X_ideal fit {xi_res:.1e}, V_ideal spread {vi:.1e}, "
                       f"V_bal spread {vb:.1e}, X_bal fit {xb_res:.1e}")
    dt = time.perf_counter() - t0
    report(5, "ideal-scheme structure", ok and dt < 60, "; ".join(details) + f"; {dt:.1f} s")


def test_criterion_6_self_ideal_coincidence(scenarios, report):
    details, ok = [], True
    for name in ("fig7", "fig9"):
        sc = scenarios(name)
        psi = sc.config.psi
        tr = analytic_traces(sc, np.array([psi, 0.0]))
        dx = abs(tr["self"].X[0] - tr["ideal"].X[1]) / abs(tr["ideal"].X[1])
        dv = abs(tr["self"].V[0] - tr["ideal"].V[1]) / tr["ideal"].V[1]
        ok &= dx < 1e-4 and dv < 1e-4
        details.append(f"{name}: dX {dx:.1e}, dV {dv:.1e}")
    report(6, "self/ideal coincidence", ok, "; ".join(details) + " (< 1e-4)")


def test_criterion_7_oracle_equivalence(scenarios, report):
    t0 = time.perf_counter()
    details, ok = [], True
    phi = phase_grid(256)
    sub = phi[::8]
    for name in ("fig7", "fig9"):
        sc = scenarios(name)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            dev = trace_deviation(analytic_traces(sc, phi), oracle_traces(sc, phi, n_modes=128, lo_amplitude=1e3))
            an_sub = analytic_traces(sc, sub)
            coarse = max(trace_deviation(an_sub, oracle_traces(sc, sub, n_modes=128, lo_amplitude=1e3)).values())
            fine = max(trace_deviation(an_sub, oracle_traces(sc, sub, n_modes=256, lo_amplitude=1e3)).values())
        worst = max(dev, key=dev.get)
        ok &= dev[worst] < 5e-3 and fine < coarse
        details.append(f"{sc.config.scenario}: worst {worst} {dev[worst]:.2e} (< 5e-3), "
                       f"M=128 -> 256: {coarse:.2e} -> {fine:.2e}")
    dt = time.perf_counter() - t0
    report(7, "oracle equivalence at |alpha_LO| = 1e3, M = 128", ok and dt < 300, "; ".join(details) + f"; {dt:.0f} s")


def test_criterion_8_figure_level_reproduction(traces, tmp_path, report):
    t7, t8, t10 = traces("fig7"), traces("fig8"), traces("fig10")
    harm = dominant_harmonic(t7["self"].V)
    flat = max(np.ptp(t7["balanced"].V), np.ptp(t7["ideal"].V))
    content = harmonic_content(t8["self"].X)
    bal = cosine_fit(t10["balanced"].phi, t10["balanced"].X)
    ideal = cosine_fit(t10["ideal"].phi, t10["ideal"].X)
    dphase = abs(np.angle(np.exp(1j * (bal[1] - ideal[1]))))
    same = []
    for name in ("fig7", "fig8", "fig9", "fig10"):
        run_sweep(load_config(name), str(tmp_path), plot=False)
        same.append((tmp_path / f"{name}.csv").read_bytes() == (FIXTURES / f"{name}.csv").read_bytes())
    ok = harm == 2 and flat < 1e-8 and content > 0.01 and bal[0] < ideal[0] and dphase > 1e-3 and all(same)
    report(8, "figure-level reproduction", ok,
           f"fig7 V_self dominant harmonic {harm}, V_bal/V_ideal spread {flat:.1e}; "
           f"fig8 self X harmonic content {content:.3f} (> 0.01); "
           f"fig10 balanced amplitude {bal[0]:.4f} < ideal {ideal[0]:.4f}, phase shift {dphase:.3f} rad; "
           f"fixtures byte-identical {all(same)}")


def test_criterion_9_shot_noise_floor(traces, report):
    vmin = min(float(np.min(tr.V)) for name in ("fig7", "fig8", "fig9", "fig10") for tr in traces(name).values())
    report(9, "shot-noise floor", vmin >= 1 - 1e-9, f"min V over all presets and schemes {vmin:.6f} (>= 1 - 1e-9)")


def test_oracle_strong_oscillator_limit_converges(scenarios):
    """The oracle's strong-oscillator limit matches the analytic traces and converges."""
    sub = phase_grid(256)[::8]
    for name in ("fig7", "fig9"):
        sc = scenarios(name)
        an = analytic_traces(sc, sub)
        coarse = max(trace_deviation(an, oracle_traces(sc, sub, n_modes=128, limit=True)).values())
        fine = max(trace_deviation(an, oracle_traces(sc, sub, n_modes=256, limit=True)).values())
        assert coarse < 5e-3
        assert fine < 0.5 * coarse


def test_oracle_finite_amplitude_approaches_limit(scenarios):
    """At |alpha_LO| = 1e5 the finite-amplitude oracle meets the 5e-3 tolerance at M = 128."""
    sub = phase_grid(256)[::8]
    for name in ("fig7", "fig9"):
        sc = scenarios(name)
        an = analytic_traces(sc, sub)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            devs = [max(trace_deviation(an, oracle_traces(sc, sub, lo_amplitude=lo)).values()) for lo in (1e4, 1e5)]
        assert devs[1] < 5e-3
        assert devs[1] < devs[0]
