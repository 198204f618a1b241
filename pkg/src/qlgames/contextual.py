"""Total-probability analysis: Bayes rule, interference term, base frequencies.

For real strategy vectors the interference correction to the classical
two-context decomposition carries a normalized cosine of exactly +-1;
this module computes the decomposition and that sign for the planar
game geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ContextError",
    "InterferenceReport",
    "bayes_total",
    "interference_decomposition",
    "unperturbed_frequencies",
    "interference_sweep",
]

_EPS_TERM = 1e-9


class ContextError(ValueError):
    """Out-of-range probability or degenerate context angle."""


@dataclass(frozen=True)
class InterferenceReport:
    """Decomposition of a direct probability through an intermediate context.

    direct = classical_sum + interference_term; ``lam`` is the
    interference term normalized by twice the geometric mean of the two
    product terms (None when either term is numerically zero).
    """

    direct: float
    classical_sum: float
    interference_term: float
    lam: float | None

    def to_dict(self) -> dict:
        return {
            "direct": self.direct,
            "classical_sum": self.classical_sum,
            "interference_term": self.interference_term,
            "lambda": self.lam,
        }


def bayes_total(p_c1: float, p_a_c1: float, p_a_c2: float) -> float:
    """Classical total probability p(c1) p(a|c1) + (1 - p(c1)) p(a|c2)."""
    for name, val in (("p_c1", p_c1), ("p_a_c1", p_a_c1), ("p_a_c2", p_a_c2)):
        if not 0.0 <= val <= 1.0:
            raise ContextError(f"{name} must be a probability in [0, 1], got {val}")
    return p_c1 * p_a_c1 + (1.0 - p_c1) * p_a_c2


def interference_decomposition(beta_deg: float, theta_deg: float) -> InterferenceReport:
    """Decompose cos^2(beta) through the context rotated by theta.

    The strategy at angle beta has direct probability cos^2(beta) on the
    first reference direction; conditioning on the intermediate basis at
    angle theta gives the classical sum
    cos^2(beta-theta) cos^2(theta) + sin^2(beta-theta) sin^2(theta).
    The gap is the interference term; with real amplitudes its
    normalized cosine is +-1 whenever both product terms are non-zero.
    theta may be negative (mirrored context) but not 0 or +-90.
    """
    if not -90.0 < theta_deg < 90.0 or theta_deg == 0.0:
        raise ContextError(
            f"context angle must lie in (-90, 90) degrees and be non-zero, got {theta_deg}"
        )
    b = math.radians(beta_deg)
    t = math.radians(theta_deg)
    direct = math.cos(b) ** 2
    term1 = math.cos(b - t) ** 2 * math.cos(t) ** 2
    term2 = math.sin(b - t) ** 2 * math.sin(t) ** 2
    classical = term1 + term2
    interference = direct - classical
    if term1 >= _EPS_TERM and term2 >= _EPS_TERM:
        lam = interference / (2.0 * math.sqrt(term1 * term2))
    else:
        lam = None
    return InterferenceReport(direct, classical, interference, lam)


def unperturbed_frequencies() -> tuple[float, float, float, float]:
    """Base vertex frequencies of the undisturbed ensemble: (1/2, 1/4, 0, 1/4)."""
    return (0.5, 0.25, 0.0, 0.25)


def interference_sweep(beta_step: float = 1.0, theta_step: float = 1.0):
    """Decomposition rows over the (beta, theta) grid, for CSV export.

    Yields (beta, theta, direct, classical_sum, interference, lambda)
    with beta in [0, 180) and theta in (0, 90).
    """
    beta = 0.0
    while beta < 180.0:
        theta = theta_step
        while theta < 90.0:
            rep = interference_decomposition(beta, theta)
            yield (beta, theta, rep.direct, rep.classical_sum, rep.interference_term, rep.lam)
            theta += theta_step
        beta += beta_step
