import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import loggamma

from framehomodyne.errors import DomainError
from framehomodyne.special_fn import (
    gamma_complex,
    log_gamma_complex,
    log_sinh,
    squeezing_cosh_sinh,
    squeezing_parameter,
    z_factor,
)

finite = st.floats(-60, 60, allow_nan=False)
positive = st.floats(1e-3, 50, allow_nan=False)


def mp_loggamma(z):
    with mpmath.workdps(40):
        return complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))


def test_loggamma_matches_scipy_on_wide_sample():
    x, y = np.meshgrid(np.linspace(-30.5, 40, 141), np.linspace(-1e3, 1e3, 201))
    z = (x + 1j * y).ravel()
    z = z[np.abs(z.imag) > 0]
    ours, ref = log_gamma_complex(z), loggamma(z)
    assert np.max(np.abs(ours - ref) / np.maximum(1.0, np.abs(ref))) < 1e-13


@pytest.mark.parametrize("z", [0.5 + 1e-3j, 1 + 1j, -7.5 + 0.25j, 3 - 999j, 1e-8 + 1e-8j, -0.5 + 40j, 200 + 3j])
def test_loggamma_against_mpmath(z):
    ref = mp_loggamma(z)
    assert abs(log_gamma_complex(z) - ref) <= 2e-12 * max(1.0, abs(ref))


def test_loggamma_real_axis_and_known_values():
    assert abs(log_gamma_complex(1.0)) < 1e-14
    assert abs(log_gamma_complex(0.5) - 0.5 * np.log(np.pi)) < 1e-14
    assert abs(gamma_complex(5.0) - 24.0) < 1e-12


@pytest.mark.parametrize("z", [0.0, -1.0, -7.0, np.array([1.0, -3.0])])
def test_loggamma_poles_raise(z):
    with pytest.raises(DomainError):
        log_gamma_complex(z)


@settings(max_examples=200, deadline=None)
@given(finite, st.floats(-50, 50, allow_nan=False))
def test_loggamma_recurrence(x, y):
    z = complex(x, y)
    if y == 0 and x <= 0 and x == round(x):
        return
    if abs(z) < 1e-6:
        return
    lhs = log_gamma_complex(z + 1)
    rhs = log_gamma_complex(z) + np.log(z)
    # equal modulo 2 pi i
    d = lhs - rhs
    d = complex(d.real, (d.imag + np.pi) % (2 * np.pi) - np.pi)
    assert abs(d) < 1e-11 * max(1.0, abs(lhs))


@settings(max_examples=100, deadline=None)
@given(st.floats(-20, 20), st.floats(0.01, 20))
def test_loggamma_conjugate_symmetry(x, y):
    z = complex(x, y)
    assert abs(log_gamma_complex(np.conj(z)) - np.conj(log_gamma_complex(z))) < 1e-12 * max(1, abs(z) ** 2)


def test_gamma_modulus_identity():
    x = np.logspace(-1, 1, 100)
    val = np.abs(gamma_complex(1 + 1j * x)) ** 2
    assert np.max(np.abs(val / (np.pi * x / np.sinh(np.pi * x)) - 1)) < 1e-10


def test_log_sinh_large_and_small():
    x = np.array([1e-6, 0.5, 3.0, 800.0])
    ref = [float(mpmath.log(mpmath.sinh(v))) for v in x]
    assert np.allclose(log_sinh(x), ref, rtol=1e-13, atol=1e-13)


@settings(max_examples=200, deadline=None)
@given(positive, st.floats(0.1, 10))
def test_cosh_sinh_identity(w, a):
    ch, sh = squeezing_cosh_sinh(w, a)
    assert abs(ch**2 - sh**2 - 1) < 1e-9 * ch**2
    r = squeezing_parameter(w, a)
    assert abs(np.tanh(r) - np.exp(-np.pi * w / a)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-4, 1e3), st.floats(0.1, 10))
def test_z_factor_magnitude(w, a):
    assert abs(abs(z_factor(w, a)) ** 2 * 2 * np.pi * a - 1) < 1e-10


def test_z_factor_phase_against_mpmath():
    w, a = 0.7, 1.3
    with mpmath.workdps(30):
        x = mpmath.mpf(w) / a
        ref = 1j * mpmath.sqrt(2 * mpmath.sinh(mpmath.pi * x)) / (2 * mpmath.pi * mpmath.sqrt(w)) * mpmath.gamma(1 - 1j * x)
    assert abs(z_factor(w, a) - complex(ref)) < 1e-13


def test_z_factor_literal_reading_differs():
    assert abs(abs(z_factor(0.5, 1.0, literal_gamma_argument=True)) ** 2 * 2 * np.pi - 1) > 1e-3


@pytest.mark.parametrize("w,a", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_domain_errors(w, a):
    with pytest.raises(DomainError):
        squeezing_cosh_sinh(w, a)
    with pytest.raises(DomainError):
        z_factor(w, a)
