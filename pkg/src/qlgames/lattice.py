"""Finite bounded lattices with an optional orthocomplement.

The two game lattices are built from hardcoded Hasse cover relations:
the six-element quadrangle lattice (four atoms whose pairwise joins are
all the top) and the twelve-element five-vertex lattice (five atoms, a
level of planes, and an isolated-point atom shared by four planes).
Everything is precomputed at construction, so law checking is exhaustive
and cheap at these sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LatticeError",
    "FiniteLattice",
    "DistributivityWitness",
    "ModularityWitness",
    "OrthocomplementReport",
    "build_spin_half_lattice",
    "build_spin_one_lattice",
    "meet",
    "join",
    "distributive_law",
    "certify_distributivity",
    "distributivity_violations",
    "certify_modularity",
    "certify_orthocomplement",
]


class LatticeError(ValueError):
    """Bad lattice input: unknown element or a structure that is not a lattice."""


@dataclass(frozen=True)
class DistributivityWitness:
    """A triple (x, y, z) with (x ∨ y) ∧ z != (x ∧ z) ∨ (y ∧ z)."""

    triple: tuple[str, str, str]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class ModularityWitness:
    """A triple (x, y, z) with x <= z but x ∨ (y ∧ z) != (x ∨ y) ∧ z."""

    triple: tuple[str, str, str]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class OrthocomplementReport:
    ok: bool
    violations: tuple[str, ...]


class FiniteLattice:
    """Bounded lattice over named elements, stored as an explicit order relation.

    Meet and join tables are derived from the order at construction;
    construction fails if some pair lacks a unique greatest lower or
    least upper bound.  ``ortho`` is an optional element map (checked by
    :func:`certify_orthocomplement`, not at construction).
    """

    def __init__(self, elements, leq_matrix, ortho=None):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise LatticeError("duplicate element names")
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        leq = np.array(leq_matrix, dtype=bool)
        if leq.shape != (n, n):
            raise LatticeError("leq matrix shape does not match element count")
        self._leq = leq
        self._validate_order()
        self._meet_table, self._join_table = self._build_tables()
        bottoms = [i for i in range(n) if leq[i, :].all()]
        tops = [i for i in range(n) if leq[:, i].all()]
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique bottom and top")
        self._bottom = bottoms[0]
        self._top = tops[0]
        if ortho is None:
            self._ortho = None
        else:
            self._ortho = np.array([self._index[ortho[e]] for e in self.elements])

    @classmethod
    def from_covers(cls, elements, covers, ortho=None):
        """Build from Hasse cover pairs (lower, upper)."""
        elements = [str(e) for e in elements]
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for lo, hi in covers:
            if str(lo) not in index or str(hi) not in index:
                raise LatticeError(f"cover ({lo}, {hi}) names unknown elements")
            leq[index[str(lo)], index[str(hi)]] = True
        # Warshall transitive closure
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        return cls(elements, leq, ortho=ortho)

    # -- basic queries ---------------------------------------------------

    def index(self, x) -> int:
        try:
            return self._index[str(x)]
        except KeyError:
            raise LatticeError(f"element {x!r} is not in the lattice") from None

    @property
    def bottom(self) -> str:
        return self.elements[self._bottom]

    @property
    def top(self) -> str:
        return self.elements[self._top]

    @property
    def atoms(self) -> tuple[str, ...]:
        b = self._bottom
        out = []
        for i, e in enumerate(self.elements):
            if i == b:
                continue
            below = [j for j in range(len(self.elements)) if self._leq[j, i] and j != i]
            if below == [b]:
                out.append(e)
        return tuple(out)

    def leq(self, x, y) -> bool:
        return bool(self._leq[self.index(x), self.index(y)])

    def meet(self, x, y) -> str:
        return self.elements[self._meet_table[self.index(x), self.index(y)]]

    def join(self, x, y) -> str:
        return self.elements[self._join_table[self.index(x), self.index(y)]]

    def ortho(self, x) -> str:
        if self._ortho is None:
            raise LatticeError("lattice has no orthocomplement map")
        return self.elements[self._ortho[self.index(x)]]

    @property
    def has_ortho(self) -> bool:
        return self._ortho is not None

    def cover_pairs(self) -> list[tuple[str, str]]:
        """The Hasse cover relation recovered from the order."""
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self._leq[i, j]:
                    continue
                between = any(
                    self._leq[i, k] and self._leq[k, j]
                    for k in range(n)
                    if k != i and k != j
                )
                if not between:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def to_dict(self) -> dict:
        d = {
            "elements": list(self.elements),
            "covers": [list(p) for p in self.cover_pairs()],
        }
        if self._ortho is not None:
            d["ortho"] = {e: self.elements[self._ortho[i]] for i, e in enumerate(self.elements)}
        return d

    # -- construction helpers ---------------------------------------------

    def _validate_order(self):
        leq = self._leq
        n = leq.shape[0]
        if not leq.diagonal().all():
            raise LatticeError("order is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise LatticeError("order is not antisymmetric")
        for k in range(n):
            if (np.outer(leq[:, k], leq[k, :]) & ~leq).any():
                raise LatticeError("order is not transitive")

    def _build_tables(self):
        leq = self._leq
        n = leq.shape[0]
        meet_t = np.empty((n, n), dtype=np.intp)
        join_t = np.empty((n, n), dtype=np.intp)
        for i in range(n):
            for j in range(n):
                lower = np.flatnonzero(leq[:, i] & leq[:, j])
                glb = [k for k in lower if all(leq[m, k] for m in lower)]
                if len(glb) != 1:
                    raise LatticeError(
                        f"no unique meet for ({self.elements[i]}, {self.elements[j]})"
                    )
                meet_t[i, j] = glb[0]
                upper = np.flatnonzero(leq[i, :] & leq[j, :])
                lub = [k for k in upper if all(leq[k, m] for m in upper)]
                if len(lub) != 1:
                    raise LatticeError(
                        f"no unique join for ({self.elements[i]}, {self.elements[j]})"
                    )
                join_t[i, j] = lub[0]
        return meet_t, join_t


def meet(lattice: FiniteLattice, x, y) -> str:
    """Greatest lower bound of x and y."""
    return lattice.meet(x, y)


def join(lattice: FiniteLattice, x, y) -> str:
    """Least upper bound of x and y."""
    return lattice.join(x, y)


def build_spin_half_lattice() -> FiniteLattice:
    """Quadrangle question lattice: atoms 1..4, any two distinct atoms join to I.

    Orthocomplement pairs the diagonals: 1 <-> 3 and 2 <-> 4.
    """
    elements = ["0", "1", "2", "3", "4", "I"]
    covers = [("0", a) for a in "1234"] + [(a, "I") for a in "1234"]
    ortho = {"0": "I", "I": "0", "1": "3", "3": "1", "2": "4", "4": "2"}
    return FiniteLattice.from_covers(elements, covers, ortho=ortho)


def build_spin_one_lattice() -> FiniteLattice:
    """Five-atom lattice of the five-vertex game.

    Atoms A0..A4 (A0 the isolated point); A5 is the join of the four
    square atoms, A6..A9 are the planes joining A0 with each square
    atom.  The orthocomplement pairs A0<->A5, A1<->A8, A2<->A9, A3<->A6,
    A4<->A7.
    """
    elements = ["0"] + [f"A{i}" for i in range(10)] + ["I"]
    covers = [("0", f"A{i}") for i in range(5)]
    covers += [(f"A{i}", "A5") for i in (1, 2, 3, 4)]
    covers += [("A0", f"A{j}") for j in (6, 7, 8, 9)]
    covers += [("A1", "A6"), ("A2", "A7"), ("A3", "A8"), ("A4", "A9")]
    covers += [(f"A{j}", "I") for j in (5, 6, 7, 8, 9)]
    ortho = {"0": "I", "I": "0", "A0": "A5", "A5": "A0"}
    for a, p in (("A1", "A8"), ("A2", "A9"), ("A3", "A6"), ("A4", "A7")):
        ortho[a] = p
        ortho[p] = a
    return FiniteLattice.from_covers(elements, covers, ortho=ortho)


def distributive_law(lattice: FiniteLattice, x, y, z) -> tuple[str, str]:
    """Both sides of (x ∨ y) ∧ z = (x ∧ z) ∨ (y ∧ z) for one triple."""
    lhs = lattice.meet(lattice.join(x, y), z)
    rhs = lattice.join(lattice.meet(x, z), lattice.meet(y, z))
    return lhs, rhs


def certify_distributivity(lattice: FiniteLattice):
    """Exhaustive distributivity check.

    Returns (True, None) or (False, witness); triples are scanned in
    element order and the first violation is reported, which makes the
    witness deterministic.
    """
    for x, y, z in itertools.product(lattice.elements, repeat=3):
        lhs, rhs = distributive_law(lattice, x, y, z)
        if lhs != rhs:
            return False, DistributivityWitness((x, y, z), lhs, rhs)
    return True, None


def distributivity_violations(lattice: FiniteLattice) -> list[DistributivityWitness]:
    """Every triple violating the distributive law, in scan order."""
    out = []
    for x, y, z in itertools.product(lattice.elements, repeat=3):
        lhs, rhs = distributive_law(lattice, x, y, z)
        if lhs != rhs:
            out.append(DistributivityWitness((x, y, z), lhs, rhs))
    return out


def certify_modularity(lattice: FiniteLattice):
    """Exhaustive check of x <= z  =>  x ∨ (y ∧ z) = (x ∨ y) ∧ z."""
    for x, y, z in itertools.product(lattice.elements, repeat=3):
        if not lattice.leq(x, z):
            continue
        lhs = lattice.join(x, lattice.meet(y, z))
        rhs = lattice.meet(lattice.join(x, y), z)
        if lhs != rhs:
            return False, ModularityWitness((x, y, z), lhs, rhs)
    return True, None


def certify_orthocomplement(lattice: FiniteLattice) -> OrthocomplementReport:
    """Check involution, order reversal, and the complement laws element-wise."""
    if not lattice.has_ortho:
        return OrthocomplementReport(False, ("no orthocomplement map defined",))
    bad = []
    for x in lattice.elements:
        xp = lattice.ortho(x)
        if lattice.ortho(xp) != x:
            bad.append(f"involution fails: {x}'' = {lattice.ortho(xp)} != {x}")
        if lattice.meet(x, xp) != lattice.bottom:
            bad.append(f"{x} ∧ {x}' = {lattice.meet(x, xp)} != {lattice.bottom}")
        if lattice.join(x, xp) != lattice.top:
            bad.append(f"{x} ∨ {x}' = {lattice.join(x, xp)} != {lattice.top}")
    for x, y in itertools.product(lattice.elements, repeat=2):
        if lattice.leq(x, y) and not lattice.leq(lattice.ortho(y), lattice.ortho(x)):
            bad.append(f"order reversal fails on ({x}, {y})")
    return OrthocomplementReport(not bad, tuple(bad))
