"""Game specifications, payoff matrices, and expected-payoff functionals.

Two zero-sum guessing games: the four-corner game (Alice asks one
question per round) and the five-vertex game (an isolated point is
added and Alice may risk a second question after a negative answer).
Bob's payoff matrix is always the negation of Alice's.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .hilbert import StrategyVector, spin_half_profile, spin_one_profile

__all__ = [
    "GameSpecError",
    "SpinHalfGameSpec",
    "SpinOneGameSpec",
    "PayoffMatrix",
    "payoff_matrix_half",
    "payoff_matrix_one",
    "pure_saddle_exists",
    "expected_payoff_half",
    "expected_payoff_half_operator",
    "expected_payoff_one",
    "payoff_coefficients_one",
]


class GameSpecError(ValueError):
    """Invalid game parameters."""


def _check_angle(name, value):
    if not 0.0 < value < 90.0:
        raise GameSpecError(f"{name} must lie strictly between 0 and 90 degrees, got {value}")


def _check_payoff(name, value):
    if not math.isfinite(value) or value < 0.0:
        raise GameSpecError(f"payoff {name} must be finite and non-negative, got {value}")


@dataclass(frozen=True)
class SpinHalfGameSpec:
    """Four-corner game: context angles plus the four catch payoffs.

    a pays catching the ball at 3 when asking 1, c the reverse; b/d the
    same for the rotated 2-4 context.
    """

    theta_a: float
    theta_b: float
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    d: float = 1.0

    def __post_init__(self):
        _check_angle("theta_a", self.theta_a)
        _check_angle("theta_b", self.theta_b)
        for name in "abcd":
            _check_payoff(name, getattr(self, name))

    @property
    def payoffs(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class SpinOneGameSpec:
    """Five-vertex game: context angles, safe payoffs u0..u4, risky payoffs v0..v4."""

    theta_a: float
    theta_b: float
    u: tuple[float, float, float, float, float]
    v: tuple[float, float, float, float, float]

    def __post_init__(self):
        _check_angle("theta_a", self.theta_a)
        _check_angle("theta_b", self.theta_b)
        object.__setattr__(self, "u", tuple(float(x) for x in self.u))
        object.__setattr__(self, "v", tuple(float(x) for x in self.v))
        if len(self.u) != 5 or len(self.v) != 5:
            raise GameSpecError("u and v must each have five entries")
        for i, x in enumerate(self.u):
            _check_payoff(f"u{i}", x)
        for i, x in enumerate(self.v):
            _check_payoff(f"v{i}", x)

    def ordering_violations(self) -> list[str]:
        """Safe payoffs must undercut the risky payoffs they forgo.

        u0 < v1..v4 and u_k < v0, v_opp(k) for each corner k.  Returns
        the violated constraints (empty when the spec is well-formed).
        """
        opp = {1: 3, 2: 4, 3: 1, 4: 2}
        bad = []
        for k in range(1, 5):
            if not self.u[0] < self.v[k]:
                bad.append(f"u0 < v{k}")
        for k in range(1, 5):
            if not self.u[k] < self.v[0]:
                bad.append(f"u{k} < v0")
            if not self.u[k] < self.v[opp[k]]:
                bad.append(f"u{k} < v{opp[k]}")
        return bad


@dataclass(frozen=True)
class PayoffMatrix:
    """Alice's payoff matrix; rows are her pure strategies, columns Bob's."""

    entries: np.ndarray
    row_labels: tuple
    col_labels: tuple

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape != (len(self.row_labels), len(self.col_labels)):
            raise GameSpecError("payoff matrix shape does not match its labels")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("strategy," + ",".join(str(c) for c in self.col_labels) + "\n")
        for lab, row in zip(self.row_labels, self.entries):
            buf.write(str(lab) + "," + ",".join(repr(float(x)) for x in row) + "\n")
        return buf.getvalue()


def payoff_matrix_half(spec: SpinHalfGameSpec) -> PayoffMatrix:
    """4x4 matrix: asking a vertex pays only when the ball sits opposite."""
    m = np.zeros((4, 4))
    m[0, 2] = spec.a
    m[1, 3] = spec.b
    m[2, 0] = spec.c
    m[3, 1] = spec.d
    labels = ("1", "2", "3", "4")
    return PayoffMatrix(m, labels, labels)


def payoff_matrix_one(spec: SpinOneGameSpec) -> PayoffMatrix:
    """30-row matrix of the five-vertex game.

    Rows are grouped by first question 0..4 — a no-risk row, then the
    four risky second questions in ascending order — followed by one row
    per disjunction question 5..9.  Columns are Bob's positions 0..4.
    """
    u, v = spec.u, spec.v
    opp = {1: 3, 2: 4, 3: 1, 4: 2}
    rows = []
    labels = []

    def add(label, entries):
        labels.append(label)
        rows.append(entries)

    for first in range(5):
        safe = np.zeros(5)
        if first == 0:
            safe[1:] = u[0]
        else:
            safe[0] = u[first]
            safe[opp[first]] = u[first]
        add((first, None), safe)
        for second in range(5):
            if second == first:
                continue
            r = np.zeros(5)
            if first == 0:
                # ball in a corner; the follow-up catches its opposite
                r[opp[second]] = v[opp[second]]
            elif second == 0:
                # ball at 0 or opposite(first); "no" on 0 pins the corner
                r[opp[first]] = v[opp[first]]
            else:
                # ball at 0 or opposite(first); any corner follow-up the
                # remaining corner can reach answers yes, so only 0 is caught
                r[0] = v[0]
            add((first, second), r)
    plane_catch = {5: 0, 6: 3, 7: 4, 8: 1, 9: 2}
    for q in range(5, 10):
        r = np.zeros(5)
        r[plane_catch[q]] = v[plane_catch[q]]
        add((q, None), r)
    return PayoffMatrix(np.array(rows), tuple(labels), (0, 1, 2, 3, 4))


def pure_saddle_exists(matrix) -> bool:
    """True iff some entry is simultaneously a column maximum and row minimum."""
    m = matrix.entries if isinstance(matrix, PayoffMatrix) else np.asarray(matrix, dtype=float)
    if m.size == 0:
        raise GameSpecError("empty payoff matrix")
    row_min = m.min(axis=1, keepdims=True)
    col_max = m.max(axis=0, keepdims=True)
    return bool(((m == row_min) & (m == col_max)).any())


def expected_payoff_half(spec: SpinHalfGameSpec, alpha_deg, beta_deg):
    """Average payoff F(alpha, beta) of Born-rule strategies.

    Each catch payoff is weighted by Alice's question probability and
    Bob's probability of sitting at the opposite vertex:
    F = a p1 q3 + c p3 q1 + b p2 q4 + d p4 q2 with the profiles of
    :func:`qlgames.hilbert.spin_half_profile`.  Broadcasts over arrays.
    """
    al = np.deg2rad(alpha_deg)
    be = np.deg2rad(beta_deg)
    ta = math.radians(spec.theta_a)
    tb = math.radians(spec.theta_b)
    return (
        spec.a * np.cos(al) ** 2 * np.sin(be) ** 2
        + spec.c * np.sin(al) ** 2 * np.cos(be) ** 2
        + spec.b * np.cos(al - ta) ** 2 * np.sin(be - tb) ** 2
        + spec.d * np.sin(al - ta) ** 2 * np.cos(be - tb) ** 2
    )


def expected_payoff_half_operator(spec: SpinHalfGameSpec, alpha_deg: float, beta_deg: float) -> float:
    """Same expectation through the payoff operator on the tensor product.

    Builds sum_jk h_jk (alpha_j ⊗ beta_k) explicitly and evaluates the
    quadratic form at phi ⊗ psi; cross-validates the closed form.
    """
    from .hilbert import spin_half_projectors

    h = payoff_matrix_half(spec).entries
    aprojs = [p.matrix for p in spin_half_projectors(spec.theta_a)]
    bprojs = [p.matrix for p in spin_half_projectors(spec.theta_b)]
    op = np.zeros((4, 4))
    for j in range(4):
        for k in range(4):
            if h[j, k]:
                op += h[j, k] * np.kron(aprojs[j], bprojs[k])
    phi = StrategyVector.planar(alpha_deg).components
    psi = StrategyVector.planar(beta_deg).components
    state = np.kron(phi, psi)
    return float(state @ op @ state)


def payoff_coefficients_one(spec: SpinOneGameSpec) -> np.ndarray:
    """10x10 coefficient matrix C with E = p^T C q over Born profiles.

    Safe payoffs couple Alice's revealed-plane weights to Bob's atom
    weights in that plane's complement contexts; risky payoffs sit on
    the atom diagonal.
    """
    u, v = spec.u, spec.v
    c = np.zeros((10, 10))
    c[5, [1, 2, 3, 4]] = u[0]
    c[8, [0, 3]] = u[1]
    c[9, [0, 4]] = u[2]
    c[6, [0, 1]] = u[3]
    c[7, [0, 2]] = u[4]
    for i in range(5):
        c[i, i] += v[i]
    return c


def expected_payoff_one(spec: SpinOneGameSpec, phi, psi) -> float:
    """Average payoff of the five-vertex game for strategies phi, psi.

    Strategies are StrategyVectors (or (a1, a2) angle pairs).  Equals
    u0 p5 (q1+q2+q3+q4) + u1 p8 (q0+q3) + u2 p9 (q0+q4) + u3 p6 (q0+q1)
    + u4 p7 (q0+q2) + sum_i v_i p_i q_i.
    """
    p = spin_one_profile(spec.theta_a, phi)
    q = spin_one_profile(spec.theta_b, psi)
    return float(p @ payoff_coefficients_one(spec) @ q)
