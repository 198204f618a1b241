"""Independent reference implementations used to freeze expected test values.

Everything here recomputes results from first principles (order
relations, explicit matrices, exhaustive scans) without touching the
code paths under test.
"""

import math

import numpy as np


def glb_from_leq(lattice, x, y):
    """Greatest lower bound recomputed directly from the order relation."""
    lower = [z for z in lattice.elements if lattice.leq(z, x) and lattice.leq(z, y)]
    glb = [z for z in lower if all(lattice.leq(w, z) for w in lower)]
    assert len(glb) == 1
    return glb[0]


def lub_from_leq(lattice, x, y):
    upper = [z for z in lattice.elements if lattice.leq(x, z) and lattice.leq(y, z)]
    lub = [z for z in upper if all(lattice.leq(z, w) for w in upper)]
    assert len(lub) == 1
    return lub[0]


def born_via_basis(matrix, vector):
    """Squared projection length onto an orthonormal basis of the range."""
    vals, vecs = np.linalg.eigh(matrix)
    basis = vecs[:, vals > 0.5]
    return float(((basis.T @ vector) ** 2).sum())


def fictitious_play_bounds(matrix, iterations):
    """Value sandwich [max_t lower_t, min_t upper_t] from fictitious play."""
    m = np.asarray(matrix, dtype=float)
    nr, nc = m.shape
    row_counts = np.zeros(nr)
    col_counts = np.zeros(nc)
    row_counts[0] = 1.0
    col_counts[0] = 1.0
    best_lower = -np.inf
    best_upper = np.inf
    for _ in range(iterationsics := iterations):
        x = row_counts / row_counts.sum()
        y = col_counts / col_counts.sum()
        row_payoffs = m @ y
        col_payoffs = x @ m
        best_upper = min(best_upper, float(row_payoffs.max()))
        best_lower = max(best_lower, float(col_payoffs.min()))
        row_counts[int(row_payoffs.argmax())] += 1.0
        col_counts[int(col_payoffs.argmin())] += 1.0
    return best_lower, best_upper


def payoff_half(a, b, c, d, tha_deg, thb_deg, alpha_deg, beta_deg):
    """Direct transcription of the two-context payoff functional."""
    al = np.deg2rad(alpha_deg)
    be = np.deg2rad(beta_deg)
    ta = math.radians(tha_deg)
    tb = math.radians(thb_deg)
    return (
        a * np.cos(al) ** 2 * np.sin(be) ** 2
        + c * np.sin(al) ** 2 * np.cos(be) ** 2
        + b * np.cos(al - ta) ** 2 * np.sin(be - tb) ** 2
        + d * np.sin(al - ta) ** 2 * np.cos(be - tb) ** 2
    )


def grid_maximin_half(a, b, c, d, tha, thb, step):
    """Brute-force maximin of the payoff surface on a degree grid."""
    grid = np.arange(0.0, 180.0, step)
    surf = payoff_half(a, b, c, d, tha, thb, grid[:, None], grid[None, :])
    guaranteed = surf.min(axis=1)
    i = int(guaranteed.argmax())
    return float(guaranteed[i]), float(grid[i])


def explicit_projectors_one(theta_deg):
    """The ten 3x3 matrices written out entry by entry."""
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    a0 = np.array([[0, 0, 0], [0, 0, 0], [0, 0, 1.0]])
    a1 = np.array([[1.0, 0, 0], [0, 0, 0], [0, 0, 0]])
    a2 = np.array([[c * c, s * c, 0], [s * c, s * s, 0], [0, 0, 0.0]])
    a3 = np.array([[0, 0, 0], [0, 1.0, 0], [0, 0, 0]])
    a4 = np.array([[s * s, -s * c, 0], [-s * c, c * c, 0], [0, 0, 0.0]])
    a5 = np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 0]])
    a6 = np.array([[1.0, 0, 0], [0, 0, 0], [0, 0, 1.0]])
    a7 = a2 + a0
    a8 = np.array([[0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
    a9 = a4 + a0
    return [a0, a1, a2, a3, a4, a5, a6, a7, a8, a9]


def profile_one_via_projectors(theta_deg, vector):
    """Born weights of all ten questions from the explicit matrices."""
    v = np.asarray(vector, dtype=float)
    return np.array([float(v @ m @ v) for m in explicit_projectors_one(theta_deg)])


def payoff_one(u, v, tha_deg, thb_deg, phi_vec, psi_vec):
    """Expected payoff of the five-vertex game from explicit projector weights."""
    p = profile_one_via_projectors(tha_deg, phi_vec)
    q = profile_one_via_projectors(thb_deg, psi_vec)
    return (
        u[0] * p[5] * (q[1] + q[2] + q[3] + q[4])
        + u[1] * p[8] * (q[0] + q[3])
        + u[2] * p[9] * (q[0] + q[4])
        + u[3] * p[6] * (q[0] + q[1])
        + u[4] * p[7] * (q[0] + q[2])
        + v[0] * p[0] * q[0]
        + v[1] * p[1] * q[1]
        + v[2] * p[2] * q[2]
        + v[3] * p[3] * q[3]
        + v[4] * p[4] * q[4]
    )


def spherical_vector(a1_deg, a2_deg):
    c1 = math.cos(math.radians(a1_deg))
    c2 = math.cos(math.radians(a2_deg))
    c3 = math.sqrt(max(0.0, 1.0 - c1 * c1 - c2 * c2))
    return np.array([c1, c2, c3])


def grid_maximin_one(u, v, tha, thb, step):
    """Brute-force maximin of the five-vertex game on an angle grid."""
    grid = np.arange(0.0, 180.0, step)
    points = []
    for x in grid:
        for y in grid:
            c1 = math.cos(math.radians(x))
            c2 = math.cos(math.radians(y))
            if c1 * c1 + c2 * c2 <= 1.0 + 1e-12:
                points.append((x, y))
    profs = np.array(
        [profile_one_via_projectors(tha, spherical_vector(x, y)) for x, y in points]
    )
    profs_b = np.array(
        [profile_one_via_projectors(thb, spherical_vector(x, y)) for x, y in points]
    )
    coeff = np.zeros((10, 10))
    coeff[5, [1, 2, 3, 4]] = u[0]
    coeff[8, [0, 3]] = u[1]
    coeff[9, [0, 4]] = u[2]
    coeff[6, [0, 1]] = u[3]
    coeff[7, [0, 2]] = u[4]
    for i in range(5):
        coeff[i, i] += v[i]
    payoff = profs @ coeff @ profs_b.T
    guaranteed = payoff.min(axis=1)
    i = int(guaranteed.argmax())
    return float(guaranteed[i]), points[i]
