"""Classical mixed-strategy solving and Born-strategy equilibrium search.

``solve_classical`` solves the zero-sum matrix game exactly by support
enumeration.  ``saddle_search_*`` scan the angle-parametrized strategy
space: candidates are the maximizers of Alice's guaranteed value
(maximin) paired with Bob's best response, refined by golden-section
sweeps.  Every reported point carries a residual — the larger of the two
best-response defects on a fine verification grid — which is ~0 exactly
when the point is a true saddle (Nash equilibrium); where the game has
no saddle the residual quantifies the duality gap at the reported
profile instead of returning nothing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .games import (
    GameSpecError,
    PayoffMatrix,
    SpinHalfGameSpec,
    SpinOneGameSpec,
    payoff_coefficients_one,
)
from .hilbert import spin_half_profile, spin_one_profile

__all__ = [
    "MixedStrategyPair",
    "EquilibriumResult",
    "solve_classical",
    "saddle_search_half",
    "saddle_search_one",
    "best_response_alice",
    "best_response_bob",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MixedStrategyPair:
    """Optimal mixed strategies and the value of a zero-sum matrix game."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    value: float

    def to_dict(self) -> dict:
        return {"x": list(self.x), "y": list(self.y), "value": self.value}


@dataclass(frozen=True)
class EquilibriumResult:
    """A refined strategy pair with its Born profiles and saddle defect."""

    alice_params: tuple[float, ...]
    bob_params: tuple[float, ...]
    value: float
    p_profile: tuple[float, ...]
    q_profile: tuple[float, ...]
    residual: float

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alice_params) if len(self.alice_params) > 1 else self.alice_params[0],
            "beta": list(self.bob_params) if len(self.bob_params) > 1 else self.bob_params[0],
            "value": self.value,
            "p": list(self.p_profile),
            "q": list(self.q_profile),
            "residual": self.residual,
        }


# ---------------------------------------------------------------------------
# classical baseline
# ---------------------------------------------------------------------------


def solve_classical(matrix) -> MixedStrategyPair:
    """Exact optimum of the zero-sum game by support enumeration.

    Square support pairs are scanned smallest-first in lexicographic
    order; for each pair the equal-payoff system is solved and the
    von Neumann inequalities verified against the whole matrix, so the
    first hit is an exact optimum with the deterministic tie-break.
    """
    m = matrix.entries if isinstance(matrix, PayoffMatrix) else np.asarray(matrix, dtype=float)
    if m.size == 0 or m.ndim != 2:
        raise GameSpecError("payoff matrix must be non-empty and two-dimensional")
    nr, nc = m.shape
    scale = max(1.0, float(np.abs(m).max()))
    tol = 1e-9 * scale
    rhs_template = None
    for k in range(1, min(nr, nc) + 1):
        rhs_template = np.zeros(k + 1)
        rhs_template[k] = 1.0
        for rows in itertools.combinations(range(nr), k):
            sub_rows = m[list(rows), :]
            for cols in itertools.combinations(range(nc), k):
                sub = sub_rows[:, list(cols)]
                a = np.zeros((k + 1, k + 1))
                a[:k, :k] = sub.T
                a[:k, k] = -1.0
                a[k, :k] = 1.0
                try:
                    sol = np.linalg.solve(a, rhs_template)
                except np.linalg.LinAlgError:
                    continue
                if not np.isfinite(sol).all() or (sol[:k] < -tol).any():
                    continue
                v = float(sol[k])
                b = np.zeros((k + 1, k + 1))
                b[:k, :k] = sub
                b[:k, k] = -1.0
                b[k, :k] = 1.0
                try:
                    soly = np.linalg.solve(b, rhs_template)
                except np.linalg.LinAlgError:
                    continue
                if (
                    not np.isfinite(soly).all()
                    or (soly[:k] < -tol).any()
                    or abs(float(soly[k]) - v) > tol
                ):
                    continue
                x = np.zeros(nr)
                x[list(rows)] = np.clip(sol[:k], 0.0, None)
                x /= x.sum()
                y = np.zeros(nc)
                y[list(cols)] = np.clip(soly[:k], 0.0, None)
                y /= y.sum()
                if (x @ m < v - tol).any():  # some column lets Bob push below v
                    continue
                if (m @ y > v + tol).any():  # some row lets Alice push above v
                    continue
                return MixedStrategyPair(
                    tuple(float(t) for t in x), tuple(float(t) for t in y), v
                )
    raise GameSpecError("support enumeration found no equilibrium (non-finite entries?)")


# ---------------------------------------------------------------------------
# golden-section helpers
# ---------------------------------------------------------------------------


def _golden_max(fun, lo, hi, x0, f0, xtol, min_gain):
    """Golden-section scan of [lo, hi], keeping the best point seen.

    Seeded with (x0, f0); the seed only ever loses to a strictly better
    value (by more than ``min_gain``), so flat objectives do not drift.
    """
    best_x, best_f = x0, f0

    def consider(x, fx):
        nonlocal best_x, best_f
        if fx > best_f + min_gain:
            best_x, best_f = x, fx

    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = fun(c)
    consider(c, fc)
    fd = fun(d)
    consider(d, fd)
    while (b - a) > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
            consider(c, fc)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
            consider(d, fd)
    return best_x, best_f


def _golden_min(fun, lo, hi, x0, f0, xtol, min_gain):
    x, f = _golden_max(lambda t: -fun(t), lo, hi, x0, -f0, xtol, min_gain)
    return x, -f


def _perimeter_distance(a, b, period=180.0):
    d = abs(a - b) % period
    return min(d, period - d)


# ---------------------------------------------------------------------------
# spin-1/2 search
# ---------------------------------------------------------------------------


def _surface_half(spec, alphas_deg, betas_deg):
    return _kernels.payoff_surface_half(
        spec.a,
        spec.b,
        spec.c,
        spec.d,
        math.radians(spec.theta_a),
        math.radians(spec.theta_b),
        np.ascontiguousarray(np.deg2rad(alphas_deg), dtype=np.float64),
        np.ascontiguousarray(np.deg2rad(betas_deg), dtype=np.float64),
    )


def _f_half(spec, alpha, beta):
    return float(_surface_half(spec, np.array([alpha]), np.array([beta]))[0, 0])


def _check_search_params(coarse_step, refine_tol):
    if not 0.0 < coarse_step <= 5.0:
        raise GameSpecError(f"coarse_step must be in (0, 5] degrees, got {coarse_step}")
    if refine_tol < 0.001:
        raise GameSpecError(f"refine_tol must be at least 0.001 degrees, got {refine_tol}")


def saddle_search_half(
    spec: SpinHalfGameSpec,
    coarse_step: float = 0.5,
    refine_tol: float = 0.01,
    residual_step: float = 0.1,
    max_residual: float | None = None,
) -> list[EquilibriumResult]:
    """Equilibrium candidates of the four-corner game.

    Grid-scans Alice's guaranteed value, refines each maximin angle and
    Bob's best response by golden section, deduplicates within
    2*refine_tol, and certifies each point with the fine-grid residual.
    ``max_residual`` filters the output (only residual-certified points
    are kept when set).
    """
    _check_search_params(coarse_step, refine_tol)
    grid = np.arange(0.0, 180.0, coarse_step)
    betas_fine = np.arange(0.0, 180.0, residual_step)
    surface = _surface_half(spec, grid, grid)
    scale = spec.a + spec.b + spec.c + spec.d
    tol_val = 1e-9 * (1.0 + scale)
    min_gain = tol_val

    guaranteed = surface.min(axis=1)
    best_guaranteed = guaranteed.max()

    if surface.max() - surface.min() <= tol_val:
        # totally flat payoff: every grid point qualifies as-is
        value = float(surface[0, 0])
        results = []
        for i, alpha in enumerate(grid):
            for j, beta in enumerate(grid):
                results.append(_result_half(spec, float(alpha), float(beta), 0.0))
        return _filter_residual(results, max_residual)

    def guaranteed_value(alpha):
        # true best response of Bob, not just the fine-grid minimum
        row = _surface_half(spec, np.array([alpha]), betas_fine)[0]
        j = int(row.argmin())
        _, fmin = _golden_min(
            lambda b: _f_half(spec, alpha, b),
            betas_fine[j] - residual_step,
            betas_fine[j] + residual_step,
            float(betas_fine[j]),
            float(row[j]),
            3e-4,
            0.0,
        )
        return fmin

    candidates = []
    for i in np.flatnonzero(guaranteed >= best_guaranteed - tol_val):
        for j in np.flatnonzero(surface[i] <= guaranteed[i] + tol_val):
            candidates.append((float(grid[i]), float(grid[j])))
    candidates.sort()

    refined = []
    for alpha0, beta0 in candidates:
        alpha, _ = _golden_max(
            guaranteed_value,
            alpha0 - coarse_step,
            alpha0 + coarse_step,
            alpha0,
            guaranteed_value(alpha0),
            refine_tol,
            min_gain,
        )
        alpha %= 180.0
        # Bob's best response, sticky at the candidate's own column
        row = _surface_half(spec, np.array([alpha]), betas_fine)[0]
        j = int(row.argmin())
        seed_val = _f_half(spec, alpha, beta0)
        if row[j] < seed_val - min_gain:
            beta_seed, seed_val = float(betas_fine[j]), float(row[j])
        else:
            beta_seed = beta0
        beta, _ = _golden_min(
            lambda b: _f_half(spec, alpha, b),
            beta_seed - residual_step,
            beta_seed + residual_step,
            beta_seed,
            seed_val,
            refine_tol,
            min_gain,
        )
        beta %= 180.0
        refined.append((alpha, beta))

    kept = []
    for alpha, beta in refined:
        if any(
            _perimeter_distance(alpha, a2) <= 2 * refine_tol
            and _perimeter_distance(beta, b2) <= 2 * refine_tol
            for a2, b2 in kept
        ):
            continue
        kept.append((alpha, beta))

    alphas_fine = betas_fine
    results = []
    for alpha, beta in kept:
        value = _f_half(spec, alpha, beta)
        col = _surface_half(spec, alphas_fine, np.array([beta]))[:, 0]
        row = _surface_half(spec, np.array([alpha]), betas_fine)[0]
        residual = max(float(col.max()) - value, value - float(row.min()), 0.0)
        results.append(_result_half(spec, alpha, beta, residual))
    return _filter_residual(results, max_residual)


def _result_half(spec, alpha, beta, residual):
    p = spin_half_profile(spec.theta_a, alpha)
    q = spin_half_profile(spec.theta_b, beta)
    return EquilibriumResult(
        (alpha,),
        (beta,),
        _f_half(spec, alpha, beta),
        tuple(float(x) for x in p),
        tuple(float(x) for x in q),
        residual,
    )


def _filter_residual(results, max_residual):
    results.sort(key=lambda r: (r.alice_params, r.bob_params))
    if max_residual is None:
        return results
    return [r for r in results if r.residual <= max_residual]


# ---------------------------------------------------------------------------
# spin-1 search
# ---------------------------------------------------------------------------


def _feasible_grid_one(step):
    """Angle pairs (a1, a2) whose direction cosines can be normalized."""
    g = np.arange(0.0, 180.0, step)
    a1, a2 = np.meshgrid(g, g, indexing="ij")
    c1 = np.cos(np.deg2rad(a1)) ** 2
    c2 = np.cos(np.deg2rad(a2)) ** 2
    mask = c1 + c2 <= 1.0 + 1e-12
    return np.stack([a1[mask], a2[mask]], axis=1)


def _profiles_one(theta_deg, points):
    t = math.radians(theta_deg)
    c1 = np.cos(np.deg2rad(points[:, 0]))
    c2 = np.cos(np.deg2rad(points[:, 1]))
    p0 = np.clip(1.0 - c1**2 - c2**2, 0.0, None)
    p1 = c1**2
    p2 = (math.cos(t) * c1 + math.sin(t) * c2) ** 2
    p3 = c2**2
    p4 = 1.0 - p0 - p2
    return np.stack(
        [p0, p1, p2, p3, p4, 1.0 - p0, 1.0 - p3, 1.0 - p4, 1.0 - p1, 1.0 - p2], axis=1
    )


def _feasible_interval(other_angle_deg):
    """Feasible range of one angle given the other: |cos a| <= |sin other|."""
    lim = math.degrees(math.acos(min(1.0, abs(math.sin(math.radians(other_angle_deg))))))
    return lim, 180.0 - lim


def saddle_search_one(
    spec: SpinOneGameSpec,
    coarse_step: float = 3.0,
    refine_tol: float = 0.05,
    residual_step: float = 1.0,
    max_residual: float | None = None,
) -> list[EquilibriumResult]:
    """Equilibrium candidates of the five-vertex game.

    Same contract as :func:`saddle_search_half` over the product of two
    spherical-angle manifolds (two free angles per player, the third
    direction fixed by normalization with a non-negative cosine).
    """
    _check_search_params(coarse_step, refine_tol)
    coeff = payoff_coefficients_one(spec)
    pts = _feasible_grid_one(coarse_step)
    pts_fine = _feasible_grid_one(residual_step)
    palice = _profiles_one(spec.theta_a, pts)
    pbob = _profiles_one(spec.theta_b, pts)
    pbob_fine = _profiles_one(spec.theta_b, pts_fine)
    palice_fine = _profiles_one(spec.theta_a, pts_fine)
    cq = coeff @ pbob.T
    cq_fine = coeff @ pbob_fine.T
    payoff = palice @ cq
    scale = sum(spec.u) + sum(spec.v)
    tol_val = 1e-9 * (1.0 + scale)
    min_gain = tol_val

    guaranteed = payoff.min(axis=1)
    best_guaranteed = guaranteed.max()

    if payoff.max() - payoff.min() <= tol_val:
        results = []
        for i in range(pts.shape[0]):
            for j in range(pts.shape[0]):
                results.append(_result_one(spec, coeff, tuple(pts[i]), tuple(pts[j]), 0.0))
        return _filter_residual(results, max_residual)

    def eval_pair(aangles, bangles):
        p = _profiles_one(spec.theta_a, np.array([aangles]))
        q = _profiles_one(spec.theta_b, np.array([bangles]))
        return float(p @ coeff @ q.T)

    def guaranteed_value(aangles):
        p = _profiles_one(spec.theta_a, np.array([aangles]))
        vals = (p @ cq_fine)[0]
        j = int(vals.argmin())
        seed = tuple(pts_fine[j])
        val = float(vals[j])
        # one polish pass over Bob's two coordinates
        for coord in (0, 1):
            lo, hi = _feasible_interval(seed[1 - coord])
            center = min(max(seed[coord], lo), hi)

            def f(t, seed=seed, coord=coord):
                cand = list(seed)
                cand[coord] = t
                return eval_pair(aangles, tuple(cand))

            t, val = _golden_min(
                f,
                max(lo, center - residual_step),
                min(hi, center + residual_step),
                center,
                f(center),
                3e-3,
                0.0,
            )
            seed = tuple(t if k == coord else seed[k] for k in range(2))
        return val

    candidates = []
    for i in np.flatnonzero(guaranteed >= best_guaranteed - tol_val):
        for j in np.flatnonzero(payoff[i] <= guaranteed[i] + tol_val):
            candidates.append((tuple(float(x) for x in pts[i]), tuple(float(x) for x in pts[j])))
    candidates.sort()

    refined = []
    for aangles, bangles in candidates:
        cur = aangles
        cur_val = guaranteed_value(cur)
        for _ in range(4):
            moved = 0.0
            for coord in (0, 1):
                lo, hi = _feasible_interval(cur[1 - coord])
                center = min(max(cur[coord], lo), hi)

                def f(t, cur=cur, coord=coord):
                    cand = list(cur)
                    cand[coord] = t
                    return guaranteed_value(tuple(cand))

                t, cur_val = _golden_max(
                    f,
                    max(lo, center - coarse_step),
                    min(hi, center + coarse_step),
                    center,
                    cur_val,
                    refine_tol,
                    min_gain,
                )
                moved = max(moved, abs(t - cur[coord]))
                cur = tuple(t if k == coord else cur[k] for k in range(2))
            if moved < refine_tol:
                break
        phi = cur
        # Bob's best response, sticky at the candidate's point
        p = _profiles_one(spec.theta_a, np.array([phi]))
        vals = (p @ cq_fine)[0]
        j = int(vals.argmin())
        seed_val = eval_pair(phi, bangles)
        if vals[j] < seed_val - min_gain:
            psi, seed_val = tuple(float(x) for x in pts_fine[j]), float(vals[j])
        else:
            psi = bangles
        for _ in range(3):
            moved = 0.0
            for coord in (0, 1):
                lo, hi = _feasible_interval(psi[1 - coord])
                center = min(max(psi[coord], lo), hi)

                def f(t, psi=psi, coord=coord):
                    cand = list(psi)
                    cand[coord] = t
                    return eval_pair(phi, tuple(cand))

                t, seed_val = _golden_min(
                    f,
                    max(lo, center - residual_step),
                    min(hi, center + residual_step),
                    center,
                    seed_val,
                    refine_tol,
                    min_gain,
                )
                moved = max(moved, abs(t - psi[coord]))
                psi = tuple(t if k == coord else psi[k] for k in range(2))
            if moved < refine_tol:
                break
        refined.append((phi, psi))

    kept = []
    for phi, psi in refined:
        if any(
            all(_perimeter_distance(phi[k], p2[k]) <= 2 * refine_tol for k in range(2))
            and all(_perimeter_distance(psi[k], q2[k]) <= 2 * refine_tol for k in range(2))
            for p2, q2 in kept
        ):
            continue
        kept.append((phi, psi))

    results = []
    for phi, psi in kept:
        value = eval_pair(phi, psi)
        q1 = _profiles_one(spec.theta_b, np.array([psi]))
        alice_dev = float((palice_fine @ (coeff @ q1.T)).max())
        p1 = _profiles_one(spec.theta_a, np.array([phi]))
        bob_dev = float((p1 @ cq_fine).min())
        residual = max(alice_dev - value, value - bob_dev, 0.0)
        results.append(_result_one(spec, coeff, phi, psi, residual))
    return _filter_residual(results, max_residual)


def _result_one(spec, coeff, phi, psi, residual):
    p = _profiles_one(spec.theta_a, np.array([phi]))[0]
    q = _profiles_one(spec.theta_b, np.array([psi]))[0]
    value = float(p @ coeff @ q)
    return EquilibriumResult(
        tuple(float(x) for x in phi),
        tuple(float(x) for x in psi),
        value,
        tuple(float(x) for x in p),
        tuple(float(x) for x in q),
        residual,
    )


# ---------------------------------------------------------------------------
# best responses
# ---------------------------------------------------------------------------


def best_response_alice(spec, opponent, step: float = 0.1, xtol: float = 0.001):
    """Alice's best reply to a fixed Bob strategy.

    Spin-1/2: ``opponent`` is beta in degrees, returns (alpha, value).
    Spin-1: ``opponent`` is a (b1, b2) angle pair, returns ((a1, a2), value).
    """
    if isinstance(spec, SpinHalfGameSpec):
        beta = float(opponent)
        grid = np.arange(0.0, 180.0, step)
        vals = _surface_half(spec, grid, np.array([beta]))[:, 0]
        i = int(vals.argmax())
        alpha, value = _golden_max(
            lambda a: _f_half(spec, a, beta),
            grid[i] - step,
            grid[i] + step,
            float(grid[i]),
            float(vals[i]),
            xtol,
            0.0,
        )
        return alpha % 180.0, value
    return _best_response_one(spec, opponent, maximize=True, step=max(step, 0.5), xtol=xtol)


def best_response_bob(spec, opponent, step: float = 0.1, xtol: float = 0.001):
    """Bob's best reply (payoff-minimizing) to a fixed Alice strategy."""
    if isinstance(spec, SpinHalfGameSpec):
        alpha = float(opponent)
        grid = np.arange(0.0, 180.0, step)
        vals = _surface_half(spec, np.array([alpha]), grid)[0]
        j = int(vals.argmin())
        beta, value = _golden_min(
            lambda b: _f_half(spec, alpha, b),
            grid[j] - step,
            grid[j] + step,
            float(grid[j]),
            float(vals[j]),
            xtol,
            0.0,
        )
        return beta % 180.0, value
    return _best_response_one(spec, opponent, maximize=False, step=max(step, 0.5), xtol=xtol)


def _best_response_one(spec: SpinOneGameSpec, opponent, maximize, step, xtol):
    coeff = payoff_coefficients_one(spec)
    if maximize:
        fixed = _profiles_one(spec.theta_b, np.array([tuple(opponent)]))[0]
        weights = coeff @ fixed
        theta = spec.theta_a
    else:
        fixed = _profiles_one(spec.theta_a, np.array([tuple(opponent)]))[0]
        weights = coeff.T @ fixed
        theta = spec.theta_b
    pts = _feasible_grid_one(step)
    vals = _profiles_one(theta, pts) @ weights
    i = int(vals.argmax() if maximize else vals.argmin())
    cur = tuple(float(x) for x in pts[i])
    cur_val = float(vals[i])

    def point_val(angles):
        return float(_profiles_one(theta, np.array([angles]))[0] @ weights)

    opt = _golden_max if maximize else _golden_min
    for _ in range(4):
        moved = 0.0
        for coord in (0, 1):
            lo, hi = _feasible_interval(cur[1 - coord])
            center = min(max(cur[coord], lo), hi)

            def f(t, cur=cur, coord=coord):
                cand = list(cur)
                cand[coord] = t
                return point_val(tuple(cand))

            t, cur_val = opt(
                f,
                max(lo, center - step),
                min(hi, center + step),
                center,
                cur_val,
                xtol,
                0.0,
            )
            moved = max(moved, abs(t - cur[coord]))
            cur = tuple(t if k == coord else cur[k] for k in range(2))
        if moved < xtol:
            break
    return cur, cur_val
