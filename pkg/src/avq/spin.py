"""Spin-r operator algebra: ladder operators, rotations, coherent states.

The representation is labeled by ``two_r`` (twice the spin quantum number),
dimension d = two_r + 1.  Basis order is m = +r down to -r, so the z
component is diag(r, r-1, ..., -r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert

DIRECTION_TOL = 1e-12


def as_direction(a) -> np.ndarray:
    v = np.asarray(a, dtype=float).reshape(3)
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > DIRECTION_TOL:
        raise ValueError(f"direction norm {nrm} is not 1 within {DIRECTION_TOL}")
    return v


def unit(a) -> np.ndarray:
    """Normalize a 3-vector to a unit direction."""
    v = np.asarray(a, dtype=float).reshape(3)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / nrm


@dataclass(frozen=True)
class SpinOperators:
    two_r: int
    ax: np.ndarray
    ay: np.ndarray
    az: np.ndarray
    plus: np.ndarray
    minus: np.ndarray

    @property
    def r(self) -> float:
        return self.two_r / 2.0

    @property
    def dim(self) -> int:
        return self.two_r + 1

    @property
    def m_values(self) -> np.ndarray:
        """m = +r, r-1, ..., -r in basis order."""
        return self.r - np.arange(self.dim)

    def casimir(self) -> np.ndarray:
        return self.ax @ self.ax + self.ay @ self.ay + self.az @ self.az

    def along(self, a) -> np.ndarray:
        n = as_direction(a)
        return n[0] * self.ax + n[1] * self.ay + n[2] * self.az


def spin_operators(two_r: int) -> SpinOperators:
    """Ladder construction in the canonical basis |r;m>, m = +r..-r."""
    if two_r < 0 or int(two_r) != two_r:
        raise ValueError("two_r must be a nonnegative integer")
    two_r = int(two_r)
    r = two_r / 2.0
    d = two_r + 1
    m = r - np.arange(d)
    az = np.diag(m).astype(complex)
    plus = np.zeros((d, d), dtype=complex)
    # raising: |r;m> -> sqrt(r(r+1) - m(m+1)) |r;m+1>; m+1 sits one row up
    for k in range(1, d):
        mm = m[k]
        plus[k - 1, k] = np.sqrt(r * (r + 1) - mm * (mm + 1))
    minus = hilbert.dagger(plus)
    ax = (plus + minus) / 2.0
    ay = (plus - minus) / 2.0j
    return SpinOperators(two_r, ax, ay, az, plus, minus)


def rotation(two_r: int, n, omega: float) -> np.ndarray:
    """exp[i omega (n . A)]: rotation by omega about the unit axis n."""
    ops = spin_operators(two_r)
    h = ops.along(n)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * omega * w)) @ hilbert.dagger(v)


def rotation_matrix(n, omega: float) -> np.ndarray:
    """The 3x3 rotation R with rotation(g)^dag (a.A) rotation(g) = (R a).A.

    Conjugating by exp[i omega n.A] rotates measurement directions by
    +omega about n (Rodrigues form; the sign is pinned by the covariance
    tests).
    """
    nv = as_direction(n)
    k = np.array([[0.0, -nv[2], nv[1]],
                  [nv[2], 0.0, -nv[0]],
                  [-nv[1], nv[0], 0.0]])
    return np.eye(3) + np.sin(omega) * k + (1.0 - np.cos(omega)) * (k @ k)


def component_operator(two_r: int, a) -> np.ndarray:
    """Spin component along the unit direction a; spectrum -r..+r."""
    return spin_operators(two_r).along(a)


def coherent_state(two_r: int, a) -> np.ndarray:
    """Lowest-weight state for the direction a.

    Rotating the reference vector |r;-r> (the -r eigenvector of the z
    component) along the geodesic from z to a yields the eigenvector of
    the a component with eigenvalue -r; that eigenvalue property is the
    contract the tests pin.  The global phase is fixed by making the first
    nonzero amplitude real positive.
    """
    av = as_direction(a)
    d = two_r + 1
    lowest = np.zeros(d, dtype=complex)
    lowest[-1] = 1.0
    z = np.array([0.0, 0.0, 1.0])
    axis = np.cross(av, z)
    nrm = np.linalg.norm(axis)
    if nrm < 1e-14:
        if av[2] > 0:  # a = +z: nothing to do
            return _canonical_phase(lowest)
        axis = np.array([1.0, 0.0, 0.0])  # a = -z: rotate by pi about x
    else:
        axis = axis / nrm
    angle = np.arccos(np.clip(av[2], -1.0, 1.0))
    u = rotation(two_r, axis, angle)
    return _canonical_phase(u @ lowest)


def _canonical_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    idx = np.nonzero(np.abs(v) > tol)[0]
    if len(idx) == 0:
        return v
    lead = v[idx[0]]
    return v * (np.conj(lead) / np.abs(lead))


def resolution_deviation(two_r: int, order: int) -> float:
    """Max-norm deviation of (d/4pi) * integral |a><a| dOmega from I.

    Product quadrature: Gauss-Legendre in cos(theta), uniform azimuth
    (trapezoid, exact for the trigonometric polynomials involved).
    """
    d = two_r + 1
    if d == 1:
        return 0.0
    if order < two_r + 2:
        raise ValueError(f"quadrature order {order} < 2r+2 = {two_r + 2}")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    phis = 2.0 * np.pi * np.arange(order) / order
    acc = np.zeros((d, d), dtype=complex)
    for c, w in zip(nodes, weights):
        s = np.sqrt(1.0 - c * c)
        for phi in phis:
            a = np.array([s * np.cos(phi), s * np.sin(phi), c])
            v = coherent_state(two_r, a)
            acc += w * np.outer(v, np.conj(v))
    acc *= (2.0 * np.pi / order) * d / (4.0 * np.pi)
    return float(np.max(np.abs(acc - np.eye(d))))


def parse_spin(text: str) -> int:
    """Parse '1', '1/2', '0.5', '3/2' ... into two_r."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        r = float(num) / float(den)
    else:
        r = float(text)
    two_r = round(2 * r)
    if two_r < 0 or abs(2 * r - two_r) > 1e-9:
        raise ValueError(f"spin must be a nonnegative half-integer, got {text!r}")
    return two_r
