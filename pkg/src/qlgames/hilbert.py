"""Real projector representations of the question lattices and Born probabilities.

All arithmetic is double-precision real; the games only need the real
plane (dimension 2) and real three-space.  Angles are degrees at the API
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HilbertError",
    "Projector",
    "StrategyVector",
    "spin_half_projectors",
    "spin_one_projectors",
    "spin_half_representation",
    "spin_one_representation",
    "subspace_meet",
    "subspace_join",
    "check_representation",
    "RepresentationReport",
    "born_probability",
    "spin_half_profile",
    "spin_one_profile",
]

_ATOL = 1e-12
_RANK_TOL = 1e-10


class HilbertError(ValueError):
    """Bad projector, strategy vector, or angle input."""


def _check_theta(theta_deg: float):
    if not 0.0 < theta_deg < 90.0:
        raise HilbertError(
            f"context angle must lie strictly between 0 and 90 degrees, got {theta_deg}"
        )


@dataclass(frozen=True)
class Projector:
    """Real symmetric idempotent matrix tagged with its lattice element."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise HilbertError("projector matrix must be square")
        if np.abs(m - m.T).max() > _ATOL:
            raise HilbertError(f"projector {self.label!r} is not symmetric")
        if np.abs(m @ m - m).max() > _ATOL:
            raise HilbertError(f"projector {self.label!r} is not idempotent")
        tr = float(np.trace(m))
        if abs(tr - round(tr)) > _ATOL:
            raise HilbertError(f"projector {self.label!r} has non-integer trace {tr}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return round(float(np.trace(self.matrix)))


@dataclass(frozen=True)
class StrategyVector:
    """Unit strategy vector, parametrized by angles in degrees.

    Dimension 2: a single angle alpha, components (cos a, sin a).
    Dimension 3: angles (a1, a2) with the third component fixed by
    normalization, components (cos a1, cos a2, cos a3), cos a3 >= 0.
    """

    components: np.ndarray
    angles: tuple[float, ...] = field(default=())

    def __post_init__(self):
        v = np.asarray(self.components, dtype=np.float64)
        if v.ndim != 1 or v.shape[0] not in (2, 3):
            raise HilbertError("strategy vector must have dimension 2 or 3")
        if abs(float(v @ v) - 1.0) > _ATOL:
            raise HilbertError(f"strategy vector is not normalized: |v|^2 = {float(v @ v)}")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))

    @classmethod
    def planar(cls, alpha_deg: float) -> "StrategyVector":
        a = math.radians(alpha_deg)
        return cls(np.array([math.cos(a), math.sin(a)]), angles=(alpha_deg,))

    @classmethod
    def spherical(cls, alpha1_deg: float, alpha2_deg: float) -> "StrategyVector":
        c1 = math.cos(math.radians(alpha1_deg))
        c2 = math.cos(math.radians(alpha2_deg))
        rest = 1.0 - c1 * c1 - c2 * c2
        if rest < -_ATOL:
            raise HilbertError(
                f"angles ({alpha1_deg}, {alpha2_deg}) leave cos^2 a3 = {rest} < 0"
            )
        c3 = math.sqrt(max(rest, 0.0))
        return cls(np.array([c1, c2, c3]), angles=(alpha1_deg, alpha2_deg))

    @property
    def dim(self) -> int:
        return self.components.shape[0]


def spin_half_projectors(theta_deg: float) -> list[Projector]:
    """The four rank-1 question projectors on the real plane.

    Questions 1/3 project on the axes, questions 2/4 on the pair of
    orthogonal lines rotated by theta.
    """
    _check_theta(theta_deg)
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    a1 = np.array([[1.0, 0.0], [0.0, 0.0]])
    a2 = np.array([[c * c, s * c], [s * c, s * s]])
    eye = np.eye(2)
    return [
        Projector(a1, "1"),
        Projector(a2, "2"),
        Projector(eye - a1, "3"),
        Projector(eye - a2, "4"),
    ]


def spin_one_projectors(theta_deg: float) -> list[Projector]:
    """The ten projectors A0..A9 on real three-space.

    A0 is the isolated axis, A1..A4 the in-plane lines (two orthogonal
    pairs separated by theta), A5 the square plane, and A6..A9 the
    planes spanned by A0 with each in-plane line.
    """
    _check_theta(theta_deg)
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    a0 = np.diag([0.0, 0.0, 1.0])
    a1 = np.diag([1.0, 0.0, 0.0])
    a2 = np.zeros((3, 3))
    a2[:2, :2] = [[c * c, s * c], [s * c, s * s]]
    a3 = np.diag([0.0, 1.0, 0.0])
    a4 = np.zeros((3, 3))
    a4[:2, :2] = [[s * s, -s * c], [-s * c, c * c]]
    a5 = np.diag([1.0, 1.0, 0.0])
    mats = [a0, a1, a2, a3, a4, a5, a1 + a0, a2 + a0, a3 + a0, a4 + a0]
    return [Projector(m, f"A{i}") for i, m in enumerate(mats)]


def spin_half_representation(theta_deg: float) -> dict[str, Projector]:
    """Projector for every element of the quadrangle lattice (0 and I included)."""
    rep = {p.label: p for p in spin_half_projectors(theta_deg)}
    rep["0"] = Projector(np.zeros((2, 2)), "0")
    rep["I"] = Projector(np.eye(2), "I")
    return rep


def spin_one_representation(theta_deg: float) -> dict[str, Projector]:
    """Projector for every element of the five-vertex lattice."""
    rep = {p.label: p for p in spin_one_projectors(theta_deg)}
    rep["0"] = Projector(np.zeros((3, 3)), "0")
    rep["I"] = Projector(np.eye(3), "I")
    return rep


def _range_basis(m: np.ndarray) -> np.ndarray:
    u, sv, _ = np.linalg.svd(m)
    if sv.size == 0 or sv[0] <= 0.0:
        return u[:, :0]
    return u[:, sv > _RANK_TOL * sv[0]]


def subspace_meet(p: Projector, q: Projector) -> Projector:
    """Projector onto range(p) ∩ range(q)."""
    if p.dim != q.dim:
        raise HilbertError("projector dimension mismatch")
    eye = np.eye(p.dim)
    # the intersection is the null space of (I-P) stacked on (I-Q)
    stacked = np.vstack([eye - p.matrix, eye - q.matrix])
    _, sv, vt = np.linalg.svd(stacked)
    top = sv[0] if sv.size and sv[0] > 0 else 1.0
    null = vt[np.concatenate([sv, np.zeros(p.dim - sv.size)]) <= _RANK_TOL * top]
    basis = null.T
    return Projector(basis @ basis.T, f"({p.label} ∧ {q.label})")


def subspace_join(p: Projector, q: Projector) -> Projector:
    """Projector onto span(range(p) ∪ range(q))."""
    if p.dim != q.dim:
        raise HilbertError("projector dimension mismatch")
    basis = _range_basis(np.hstack([p.matrix, q.matrix]))
    return Projector(basis @ basis.T, f"({p.label} ∨ {q.label})")


@dataclass(frozen=True)
class RepresentationReport:
    ok: bool
    mismatches: tuple[str, ...]
    max_deviation: float


def check_representation(lattice, projectors) -> RepresentationReport:
    """Verify that subspace meet/join/complement realize the lattice tables.

    ``projectors`` maps every lattice element to a Projector.  Each pair
    is checked with tolerance 1e-10 on the max matrix deviation.
    """
    missing = [e for e in lattice.elements if e not in projectors]
    if missing:
        raise HilbertError(f"no projector supplied for elements {missing}")
    mismatches = []
    worst = 0.0
    for x in lattice.elements:
        for y in lattice.elements:
            pm = subspace_meet(projectors[x], projectors[y]).matrix
            want = projectors[lattice.meet(x, y)].matrix
            dev = float(np.abs(pm - want).max())
            worst = max(worst, dev)
            if dev > _RANK_TOL:
                mismatches.append(f"meet({x}, {y}) != {lattice.meet(x, y)} (dev {dev:.2e})")
            pj = subspace_join(projectors[x], projectors[y]).matrix
            want = projectors[lattice.join(x, y)].matrix
            dev = float(np.abs(pj - want).max())
            worst = max(worst, dev)
            if dev > _RANK_TOL:
                mismatches.append(f"join({x}, {y}) != {lattice.join(x, y)} (dev {dev:.2e})")
    if lattice.has_ortho:
        eye = np.eye(projectors[lattice.top].dim)
        for x in lattice.elements:
            dev = float(np.abs(eye - projectors[x].matrix - projectors[lattice.ortho(x)].matrix).max())
            worst = max(worst, dev)
            if dev > _RANK_TOL:
                mismatches.append(f"complement({x}) != {lattice.ortho(x)} (dev {dev:.2e})")
    return RepresentationReport(not mismatches, tuple(mismatches), worst)


def born_probability(p: Projector, v: StrategyVector) -> float:
    """Probability <Pv, v> of an affirmative outcome, clamped to [0, 1]."""
    if p.dim != v.dim:
        raise HilbertError("projector and strategy dimensions differ")
    vec = v.components
    val = float(vec @ p.matrix @ vec)
    if val < 0.0:
        if val < -_ATOL:
            raise HilbertError(f"quadratic form out of range: {val}")
        return 0.0
    if val > 1.0:
        if val > 1.0 + _ATOL:
            raise HilbertError(f"quadratic form out of range: {val}")
        return 1.0
    return val


def spin_half_profile(theta_deg: float, alpha_deg):
    """Born probabilities (p1, p2, p3, p4) for a planar strategy at alpha.

    p1/p3 resolve the axis context, p2/p4 the rotated context; each pair
    sums to one.  Accepts scalars or numpy arrays.
    """
    a = np.deg2rad(alpha_deg)
    t = math.radians(theta_deg)
    p1 = np.cos(a) ** 2
    p2 = np.cos(a - t) ** 2
    return p1, p2, 1.0 - p1, 1.0 - p2


def spin_one_profile(theta_deg: float, strategy) -> np.ndarray:
    """Born probabilities (p0..p9) for a three-dimensional strategy.

    ``strategy`` is a StrategyVector or an (alpha1, alpha2) pair in
    degrees.  The atom weights come from the quadratic forms of the
    tabulated matrices (p2 = (cos t * v1 + sin t * v2)^2; the printed
    trigonometric expansion of p2 is not used, see README); the plane
    weights are the complements p5..p9 = 1 - p0, 1 - p3, 1 - p4, 1 - p1,
    1 - p2.
    """
    if not isinstance(strategy, StrategyVector):
        strategy = StrategyVector.spherical(*strategy)
    if strategy.dim != 3:
        raise HilbertError("spin-1 profile needs a three-dimensional strategy")
    t = math.radians(theta_deg)
    v1, v2, v3 = strategy.components
    p0 = v3 * v3
    p1 = v1 * v1
    p2 = (math.cos(t) * v1 + math.sin(t) * v2) ** 2
    p3 = v2 * v2
    p4 = 1.0 - p0 - p2
    return np.array([p0, p1, p2, p3, p4, 1.0 - p0, 1.0 - p3, 1.0 - p4, 1.0 - p1, 1.0 - p2])
