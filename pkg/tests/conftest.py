import numpy as np
import pytest

from hbevent.fourier import FourierSeries


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_real_series(rng, order, scale=1.0):
    """Random conjugate-symmetric series of the given order."""
    c = np.zeros(2 * order + 1, dtype=complex)
    c[order] = scale * rng.standard_normal()
    for n in range(1, order + 1):
        a = scale * (rng.standard_normal() + 1j * rng.standard_normal()) / 2
        c[order + n] = a
        c[order - n] = np.conj(a)
    return FourierSeries(c, real=True)


def random_complex_series(rng, order, scale=1.0):
    c = scale * (rng.standard_normal(2 * order + 1) + 1j * rng.standard_normal(2 * order + 1))
    return FourierSeries(c)


def dft_coefficients(samples, order):
    """Exact DFT oracle: coefficients from N equidistant samples, N > 2*order."""
    N = len(samples)
    tau = 2 * np.pi * np.arange(N) / N
    n = np.arange(-order, order + 1)
    return np.exp(-1j * np.outer(n, tau)) @ np.asarray(samples) / N


def sample_series(series, N):
    tau = 2 * np.pi * np.arange(N) / N
    n = np.arange(-series.order, series.order + 1)
    return np.exp(1j * np.outer(tau, n)) @ series.values
