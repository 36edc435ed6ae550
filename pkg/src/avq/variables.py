"""Accessible variables as named value lists with orthogonal eigenprojectors.

A variable pairs each distinct real value with the projector onto the
eigenspace where it is taken.  Operators are assembled from and decomposed
back into this form, functions of variables merge eigenspaces, and states
are matched back to (question, answer) pairs through a variable catalog.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .errors import DimMismatch, NotPermutation

VALUE_GAP_TOL = 1e-8
MATCH_THRESHOLD = 1e-9  # on 1 - |<a;j|s>|


@dataclass(frozen=True)
class AccessibleVariable:
    name: str
    values: np.ndarray
    projectors: tuple

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        projs = tuple(hilbert.as_operator(p) for p in self.projectors)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "projectors", projs)
        if len(vals) != len(projs) or len(vals) == 0:
            raise ValueError("need one projector per value")
        for i, u in enumerate(vals):
            for v in vals[i + 1:]:
                if abs(u - v) <= VALUE_GAP_TOL:
                    raise ValueError(f"values {u} and {v} are not distinct")
        d = projs[0].shape[0]
        for p in projs:
            hilbert.require_projector(p)
        for i in range(len(projs)):
            for j in range(i + 1, len(projs)):
                if np.max(np.abs(projs[i] @ projs[j])) > hilbert.PROJECTOR_TOL:
                    raise ValueError("projectors are not mutually orthogonal")
        if np.max(np.abs(sum(projs) - hilbert.identity(d))) > hilbert.PROJECTOR_TOL:
            raise ValueError("projectors do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def ranks(self) -> np.ndarray:
        return np.array([round(np.trace(p).real) for p in self.projectors])

    @classmethod
    def from_eigenbasis(cls, name, values, vectors) -> "AccessibleVariable":
        """One unit eigenvector per value (all eigenspaces one-dimensional)."""
        projs = [np.outer(v, np.conj(v)) for v in map(hilbert.as_state, vectors)]
        return cls(name, values, tuple(projs))

    @classmethod
    def from_operator(cls, name, h) -> "AccessibleVariable":
        dec = hilbert.eig_hermitian(h)
        return cls(name, dec.eigenvalues, dec.projectors)


@dataclass(frozen=True)
class QuestionAnswer:
    question: str   # variable name
    answer: float


def operator_of(v: AccessibleVariable) -> np.ndarray:
    return sum(u * p for u, p in zip(v.values, v.projectors))


def derived_variable(v: AccessibleVariable, t, name=None) -> AccessibleVariable:
    """The variable t(v): image values with fibers' projectors merged."""
    images = [float(t(u)) for u in v.values]
    new_values = []
    new_projectors = []
    for img, proj in zip(images, v.projectors):
        for k, w in enumerate(new_values):
            if abs(img - w) <= VALUE_GAP_TOL:
                new_projectors[k] = new_projectors[k] + proj
                break
        else:
            new_values.append(img)
            new_projectors.append(proj)
    return AccessibleVariable(name or f"{v.name}'", np.array(new_values),
                              tuple(new_projectors))


def is_maximal(v: AccessibleVariable, tol: float = 1e-8) -> bool:
    """Maximal iff every eigenspace is one-dimensional."""
    return all(abs(np.trace(p).real - 1.0) <= tol for p in v.projectors)


def state_to_question(s, catalog) -> list:
    """All (variable, value) pairs whose rank-1 eigenvector matches s.

    Matching is up to a phase: |<a;j|s>| > 1 - 1e-9.  All hits are
    reported; uniqueness is a property of well-formed catalogs, not an
    enforced constraint.
    """
    sv = hilbert.as_state(s)
    hits = []
    for var in catalog:
        if var.dim != sv.shape[0]:
            raise DimMismatch(f"variable {var.name} has dim {var.dim}, "
                              f"state has dim {sv.shape[0]}")
        for u, p in zip(var.values, var.projectors):
            if abs(np.trace(p).real - 1.0) > 1e-8:
                continue  # only sharp (rank-1) answers match a pure state
            overlap = np.sqrt(max(np.real(np.conj(sv) @ p @ sv), 0.0))
            if overlap > 1.0 - MATCH_THRESHOLD:
                hits.append(QuestionAnswer(var.name, float(u)))
    return hits


def conjugated_variable(v: AccessibleVariable, u, value_action,
                        name=None) -> AccessibleVariable:
    """Transform v by a unitary together with a permutation of its values.

    The result's operator is U^dag (operator of v) U; the value list is
    permuted by ``value_action``, which must map the value set onto itself.
    """
    uu = hilbert.require_unitary(u)
    new_values = np.array([float(value_action(x)) for x in v.values])
    # each image must land back on the value list, bijectively
    perm = np.full(len(v.values), -1)
    for j, w in enumerate(new_values):
        hits = np.nonzero(np.abs(v.values - w) <= VALUE_GAP_TOL)[0]
        if len(hits) != 1:
            raise NotPermutation(f"image value {w} is not on the value list")
        perm[j] = hits[0]
    if len(set(perm.tolist())) != len(perm):
        raise NotPermutation("value action is not a bijection of the values")
    # entry j: value action(u_j), projector of U^dag A U for that eigenvalue
    projs = tuple(hilbert.dagger(uu) @ v.projectors[perm[j]] @ uu
                  for j in range(len(v.values)))
    return AccessibleVariable(name or f"{v.name}*", new_values, projs)


def variable_to_dict(v: AccessibleVariable) -> dict:
    return {"name": v.name,
            "values": v.values.tolist(),
            "projectors": [hilbert.operator_to_dict(p) for p in v.projectors]}


def variable_from_dict(d: dict) -> AccessibleVariable:
    return AccessibleVariable(d["name"], np.array(d["values"], dtype=float),
                              tuple(hilbert.operator_from_dict(p)
                                    for p in d["projectors"]))
