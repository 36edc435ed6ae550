"""Finite groups acting on finite variable spaces.

Groups are Cayley tables over element indices; actions are lookup tables
(element, point) -> point.  Everything is small enough that the defining
identities (Latin square, associativity of the action, permissibility,
induced-action homomorphism, measure invariance) are verified by
exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPermissible, SpaceMismatch


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table.

    ``cayley[i, j]`` is the index of ``g_i * g_j``.  ``labels`` are optional
    element labels; subgroups built by :func:`maximal_permissible_subgroup`
    carry the parent element indices as labels.
    """

    cayley: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        t = np.asarray(self.cayley, dtype=int)
        object.__setattr__(self, "cayley", t)
        n = t.shape[0]
        if t.shape != (n, n):
            raise ValueError("Cayley table must be square")
        full = np.arange(n)
        for i in range(n):
            if not (np.array_equal(np.sort(t[i]), full)
                    and np.array_equal(np.sort(t[:, i]), full)):
                raise ValueError("Cayley table is not a Latin square")
        ident = [i for i in range(n)
                 if np.array_equal(t[i], full) and np.array_equal(t[:, i], full)]
        if len(ident) != 1:
            raise ValueError("Cayley table has no unique identity")
        object.__setattr__(self, "_identity", ident[0])
        inv = np.empty(n, dtype=int)
        for i in range(n):
            js = np.nonzero(t[i] == ident[0])[0]
            if len(js) != 1 or t[js[0], i] != ident[0]:
                raise ValueError("inverses inconsistent with the table")
            inv[i] = js[0]
        object.__setattr__(self, "_inverse", inv)
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length must equal group order")

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, i: int, j: int) -> int:
        return int(self.cayley[i, j])

    def inverse(self, i: int) -> int:
        return int(self._inverse[i])

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(np.zeros((1, 1), dtype=int))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n)


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a finite point list.

    ``table[g, x]`` is the image point index.  The identity and
    compatibility laws act(e, x) = x and act(g, act(h, x)) = act(g h, x)
    are checked exhaustively on construction.
    """

    group: FiniteGroup
    space: tuple
    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "space", tuple(self.space))
        t = np.asarray(self.table, dtype=int)
        object.__setattr__(self, "table", t)
        n, p = self.group.order, len(self.space)
        if t.shape != (n, p):
            raise ValueError(f"action table shape {t.shape} != ({n}, {p})")
        if not np.array_equal(t[self.group.identity], np.arange(p)):
            raise ValueError("identity element does not act trivially")
        for g in range(n):
            for h in range(n):
                if not np.array_equal(t[g, t[h]], t[self.group.mul(g, h)]):
                    raise ValueError("action is not compatible with the product")

    def act(self, g: int, x: int) -> int:
        return int(self.table[g, x])

    @classmethod
    def trivial(cls, space) -> "GroupAction":
        space = tuple(space)
        return cls(FiniteGroup.trivial(), space,
                   np.arange(len(space))[None, :])


def group_from_permutations(perms, space) -> GroupAction:
    """Close a set of permutations of ``space`` into a group action.

    ``perms`` are sequences with perm[x] = image point index.  The returned
    action's group is the generated permutation group (elements ordered by
    discovery, identity first).
    """
    space = tuple(space)
    p = len(space)
    ident = tuple(range(p))
    gens = [tuple(int(i) for i in perm) for perm in perms]
    for g in gens:
        if sorted(g) != list(range(p)):
            raise ValueError(f"{g} is not a permutation of {p} points")
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple(g[e[x]] for x in range(p))
                if h not in seen:
                    seen.add(h)
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    index = {e: k for k, e in enumerate(elems)}
    n = len(elems)
    cayley = np.empty((n, n), dtype=int)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            cayley[i, j] = index[tuple(a[b[x]] for x in range(p))]
    return GroupAction(FiniteGroup(cayley), space, np.array(elems, dtype=int))


@dataclass(frozen=True)
class VariableMap:
    """A surjective map from a point space onto a value space."""

    domain: tuple
    codomain: tuple
    index_map: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", tuple(self.codomain))
        m = np.asarray(self.index_map, dtype=int)
        object.__setattr__(self, "index_map", m)
        if m.shape != (len(self.domain),):
            raise ValueError("map length must equal domain size")
        if set(m.tolist()) != set(range(len(self.codomain))):
            raise ValueError("codomain must equal the image of the map")

    def __call__(self, x: int) -> int:
        return int(self.index_map[x])

    @classmethod
    def from_function(cls, domain, fn) -> "VariableMap":
        domain = tuple(domain)
        values = []
        idx = []
        for x in domain:
            v = fn(x)
            if v not in values:
                values.append(v)
            idx.append(values.index(v))
        return cls(domain, tuple(values), np.array(idx, dtype=int))


def _require_same_space(theta: VariableMap, action: GroupAction):
    if theta.domain != action.space:
        raise SpaceMismatch("variable domain differs from action space")


def check_permissible(theta: VariableMap, action: GroupAction) -> bool:
    """theta(x1) = theta(x2) must imply theta(k x1) = theta(k x2) for all k."""
    _require_same_space(theta, action)
    m = theta.index_map
    p = len(theta.domain)
    for x1 in range(p):
        for x2 in range(x1 + 1, p):
            if m[x1] != m[x2]:
                continue
            if np.any(m[action.table[:, x1]] != m[action.table[:, x2]]):
                return False
    return True


def induce_action(theta: VariableMap, action: GroupAction) -> GroupAction:
    """Descend a permissible action through theta to the value space.

    The returned table realizes (g theta)(x) := theta(k x); the homomorphism
    law holds by the exhaustive compatibility check in GroupAction.
    """
    if not check_permissible(theta, action):
        raise NotPermissible("variable is not permissible under this action")
    m = theta.index_map
    nvals = len(theta.codomain)
    rep = np.empty(nvals, dtype=int)  # one preimage point per value
    for v in range(nvals):
        rep[v] = int(np.nonzero(m == v)[0][0])
    table = m[action.table[:, rep]]
    return GroupAction(action.group, theta.codomain, table)


def maximal_permissible_subgroup(theta: VariableMap, action: GroupAction) -> FiniteGroup:
    """Largest subgroup under which theta descends to the value space.

    Elements h for which theta(h x) depends on x only through theta(x).
    The result's ``labels`` are the element indices in the parent group.
    """
    _require_same_space(theta, action)
    m = theta.index_map
    p = len(theta.domain)
    members = []
    for h in range(action.group.order):
        ok = all(m[action.table[h, x1]] == m[action.table[h, x2]]
                 for x1 in range(p) for x2 in range(x1 + 1, p)
                 if m[x1] == m[x2])
        if ok:
            members.append(h)
    index = {h: k for k, h in enumerate(members)}
    n = len(members)
    cayley = np.empty((n, n), dtype=int)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            c = action.group.mul(a, b)
            if c not in index:
                raise AssertionError("permissible elements are not closed")
            cayley[i, j] = index[c]
    return FiniteGroup(cayley, labels=tuple(members))


def restrict_action(action: GroupAction, subgroup: FiniteGroup) -> GroupAction:
    """Action of a labeled subgroup (as built above) on the same space."""
    rows = [action.table[h] for h in subgroup.labels]
    return GroupAction(subgroup, action.space, np.array(rows, dtype=int))


@dataclass(frozen=True)
class OrbitPartition:
    blocks: tuple       # tuples of point indices, each sorted
    transitive: bool


def orbits(action: GroupAction) -> OrbitPartition:
    p = len(action.space)
    seen = np.zeros(p, dtype=bool)
    blocks = []
    for x in range(p):
        if seen[x]:
            continue
        orb = np.unique(action.table[:, x])
        seen[orb] = True
        blocks.append(tuple(int(i) for i in orb))
    return OrbitPartition(tuple(blocks), transitive=(len(blocks) == 1))


def refines(beta: VariableMap, alpha: VariableMap) -> bool:
    """True iff alpha factors through beta (alpha = f(beta))."""
    if beta.domain != alpha.domain:
        raise SpaceMismatch("variable maps must share a domain")
    fiber_image = {}
    for x in range(len(beta.domain)):
        b, a = beta(x), alpha(x)
        if fiber_image.setdefault(b, a) != a:
            return False
    return True


@dataclass(frozen=True)
class InvariantMeasure:
    weights: np.ndarray
    side: str = "both"  # finite case: counting measure is bi-invariant

    def mass(self, points) -> float:
        return float(np.sum(self.weights[list(points)]))


def invariant_measure(action: GroupAction, orbit_mass=None,
                      probability: bool = False) -> InvariantMeasure:
    """Uniform-per-orbit measure; the total mass of each orbit is free.

    ``orbit_mass`` gives one mass per orbit (in block order, default 1 each);
    ``probability`` rescales the whole measure to total mass 1.
    """
    part = orbits(action)
    k = len(part.blocks)
    if orbit_mass is None:
        orbit_mass = [1.0] * k
    if len(orbit_mass) != k:
        raise ValueError(f"expected {k} orbit masses, got {len(orbit_mass)}")
    if any(m < 0 for m in orbit_mass):
        raise ValueError("orbit masses must be nonnegative")
    w = np.zeros(len(action.space))
    for block, mass in zip(part.blocks, orbit_mass):
        w[list(block)] = mass / len(block)
    if probability:
        total = w.sum()
        if total <= 0:
            raise ValueError("cannot normalize a zero measure")
        w = w / total
    return InvariantMeasure(w)


# Structured-text loading (element count, Cayley table, space, action table).

def action_to_dict(action: GroupAction) -> dict:
    return {"order": action.group.order,
            "cayley": action.group.cayley.tolist(),
            "space": list(action.space),
            "action": action.table.tolist()}


def action_from_dict(d: dict) -> GroupAction:
    group = FiniteGroup(np.array(d["cayley"], dtype=int))
    if group.order != int(d["order"]):
        raise ValueError("declared order does not match the Cayley table")
    return GroupAction(group, tuple(d["space"]), np.array(d["action"], dtype=int))
