"""Dense complex linear algebra for finite-dimensional operator work.

Operators are square complex numpy arrays, states are unit-norm complex
vectors.  All tolerances are module-level constants and can be overridden
per call where it matters (eigenvalue merging, symmetry checks).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotEffect, NotHermitian, NotProjector, NotUnitary

# Default tolerances.  Symmetry/unitarity/projector checks are absolute on
# matrix entries; eigenvalue merging is relative to the eigenvalue scale.
HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
STATE_NORM_TOL = 1e-10
PROJECTOR_TOL = 1e-10
EFFECT_TOL = 1e-10
TRACE_ONE_TOL = 1e-10
PSD_TOL = 1e-10
EIGEN_MERGE_TOL = 1e-8
RECONSTRUCT_TOL = 1e-8


def as_operator(a) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("operator entries must be finite")
    return m


def as_state(v) -> np.ndarray:
    """Coerce to a unit-norm complex vector."""
    s = np.asarray(v, dtype=complex).reshape(-1)
    nrm = np.linalg.norm(s)
    if abs(nrm - 1.0) > STATE_NORM_TOL:
        raise ValueError(f"state norm {nrm} is not 1 within {STATE_NORM_TOL}")
    return s


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = as_operator(a)
    return np.max(np.abs(m - dagger(m))) <= tol


def require_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_operator(a)
    dev = np.max(np.abs(m - dagger(m)))
    if dev > tol:
        raise NotHermitian(f"max |A - A^dag| = {dev} > {tol}")
    return m


def is_unitary(a, tol: float = UNITARY_TOL) -> bool:
    m = as_operator(a)
    return np.max(np.abs(dagger(m) @ m - identity(m.shape[0]))) <= tol


def require_unitary(a, tol: float = UNITARY_TOL) -> np.ndarray:
    m = as_operator(a)
    dev = np.max(np.abs(dagger(m) @ m - identity(m.shape[0])))
    if dev > tol:
        raise NotUnitary(f"max |U^dag U - I| = {dev} > {tol}")
    return m


def is_projector(p, tol: float = PROJECTOR_TOL) -> bool:
    m = as_operator(p)
    return is_hermitian(m, tol) and np.max(np.abs(m @ m - m)) <= tol


def require_projector(p, tol: float = PROJECTOR_TOL) -> np.ndarray:
    m = as_operator(p)
    if not is_hermitian(m, tol):
        raise NotProjector("projector must be Hermitian")
    dev = np.max(np.abs(m @ m - m))
    if dev > tol:
        raise NotProjector(f"max |P^2 - P| = {dev} > {tol}")
    return m


def is_effect(f, tol: float = EFFECT_TOL) -> bool:
    """0 <= F <= I within tolerance (Hermitian with spectrum in [0, 1])."""
    m = as_operator(f)
    if not is_hermitian(m, tol):
        return False
    w = np.linalg.eigvalsh(m)
    return w[0] >= -tol and w[-1] <= 1.0 + tol


def require_effect(f, tol: float = EFFECT_TOL) -> np.ndarray:
    m = as_operator(f)
    if not is_effect(m, tol):
        raise NotEffect("operator is not an effect (0 <= F <= I)")
    return m


def require_density(sigma, tol: float = TRACE_ONE_TOL) -> np.ndarray:
    """Hermitian, positive semidefinite, trace one."""
    m = require_hermitian(sigma, HERMITIAN_TOL)
    w = np.linalg.eigvalsh(m)
    if w[0] < -PSD_TOL:
        raise NotEffect(f"density operator has eigenvalue {w[0]} < -{PSD_TOL}")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise NotEffect(f"density operator trace {tr} is not 1 within {tol}")
    return m


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral resolution of a Hermitian operator.

    ``eigenvalues`` are ascending and deduplicated; ``projectors[k]`` is the
    orthogonal projector onto the eigenspace of ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    projectors: tuple

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def reconstruct(self) -> np.ndarray:
        return sum(u * p for u, p in zip(self.eigenvalues, self.projectors))

    def resolution_sum(self) -> np.ndarray:
        return sum(self.projectors)


def eig_hermitian(h, tol: float = HERMITIAN_TOL,
                  merge_tol: float = EIGEN_MERGE_TOL) -> EigenDecomposition:
    """Eigendecomposition with degenerate eigenvalues merged into one projector.

    Eigenvalues whose gap is below ``merge_tol * (1 + |u|)`` are treated as a
    single degenerate level; splitting them would fabricate spurious
    one-dimensional eigenspaces.
    """
    m = require_hermitian(h, tol)
    w, vecs = np.linalg.eigh(m)
    values = []
    projectors = []
    start = 0
    n = len(w)
    for k in range(1, n + 1):
        if k < n and (w[k] - w[k - 1]) < merge_tol * (1.0 + abs(w[k])):
            continue
        block = vecs[:, start:k]
        values.append(float(np.mean(w[start:k])))
        projectors.append(block @ dagger(block))
        start = k
    return EigenDecomposition(np.array(values), tuple(projectors))


def tensor(a, b) -> np.ndarray:
    """Kronecker product, dim = dimA * dimB."""
    return np.kron(as_operator(a), as_operator(b))


def conjugate(u, a, tol: float = UNITARY_TOL) -> np.ndarray:
    """U^dag A U for unitary U; preserves the spectrum of A."""
    uu = require_unitary(u, tol)
    return dagger(uu) @ as_operator(a) @ uu


def trace_product(a, b) -> complex:
    """trace(A B) as an explicit contraction sum_ik A_ik B_ki."""
    ma, mb = as_operator(a), as_operator(b)
    if ma.shape != mb.shape:
        raise DimMismatch(f"shapes {ma.shape} and {mb.shape} differ")
    return complex(np.einsum("ik,ki->", ma, mb))


# Structured-text (JSON-compatible) forms used by the CLI.

def operator_to_dict(a) -> dict:
    m = as_operator(a)
    return {"dim": m.shape[0],
            "re": m.real.ravel().tolist(),
            "im": m.imag.ravel().tolist()}


def operator_from_dict(d: dict) -> np.ndarray:
    n = int(d["dim"])
    m = np.array(d["re"], dtype=float) + 1j * np.array(d["im"], dtype=float)
    return as_operator(m.reshape(n, n))


def state_to_dict(v) -> dict:
    s = as_state(v)
    return {"dim": s.shape[0], "re": s.real.tolist(), "im": s.imag.tolist()}


def state_from_dict(d: dict) -> np.ndarray:
    s = np.array(d["re"], dtype=float) + 1j * np.array(d["im"], dtype=float)
    if s.shape[0] != int(d["dim"]):
        raise DimMismatch("state length does not match declared dim")
    return as_state(s)
