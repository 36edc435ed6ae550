"""Shared random-object builders for the test suite.

Everything takes an explicit numpy Generator so tests stay reproducible.
"""

import numpy as np
import pytest

from avq import hilbert, measurement, variables

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def random_hermitian(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (m + hilbert.dagger(m)) / 2.0


def random_unitary(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_density(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    s = m @ hilbert.dagger(m)
    return s / np.trace(s).real


def random_maximal_variable(rng, d, name="v"):
    u = random_unitary(rng, d)
    values = np.sort(rng.normal(size=d) * 10.0)
    while np.min(np.diff(values)) < 1e-6:
        values = np.sort(rng.normal(size=d) * 10.0)
    return variables.AccessibleVariable.from_eigenbasis(name, values, u.T)


def random_model(rng, d, nx):
    lik = rng.random((nx, d)) + 0.05
    lik /= lik.sum(axis=0, keepdims=True)
    return measurement.StatisticalModel(np.arange(d, dtype=float),
                                        tuple(range(nx)), lik)


def random_diagonal_instrument(rng, d, branches):
    amp = rng.random((branches, d)) + 0.05
    amp /= amp.sum(axis=0, keepdims=True)
    amp = np.sqrt(amp)
    phases = np.exp(2j * np.pi * rng.random((branches, d)))
    return measurement.KrausInstrument(
        tuple(np.diag(amp[k] * phases[k]) for k in range(branches)))


def random_instrument(rng, d, branches):
    """QR-complete a random stack into sum A^dag A = I."""
    m = rng.normal(size=(branches * d, d)) + 1j * rng.normal(size=(branches * d, d))
    q, _ = np.linalg.qr(m)
    return measurement.KrausInstrument(
        tuple(q[k * d:(k + 1) * d, :] for k in range(branches)))
