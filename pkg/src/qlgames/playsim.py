"""Monte Carlo simulation of the repeated guessing games.

Quantum mode samples questions and positions from the Born conditionals
of the players' strategy vectors; mechanical mode places an explicit
ball and applies Bob's adjacency reaction rule, which is what makes the
observed frequencies context-dependent.

Reproducibility: each run draws one (rounds, 4) block of uniforms from a
seeded counter-based Philox generator; per round the columns are
consumed in the fixed order (context, question, position, risk).  Modes
that need fewer draws still consume the full block, so reports are
bit-identical across backends and runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import _kernels
from .games import SpinHalfGameSpec, SpinOneGameSpec
from .hilbert import StrategyVector, spin_half_profile, spin_one_profile

__all__ = [
    "SimError",
    "SimConfig",
    "SimReport",
    "reaction",
    "simulate_quantum_half",
    "simulate_mechanical_half",
    "simulate_quantum_one",
    "frequency_check",
    "born_no_frequencies_half",
    "born_no_frequencies_one",
]

_OPPOSITE = {1: 3, 2: 4, 3: 1, 4: 2}
_ADJACENT = {1: (2, 4), 2: (1, 3), 3: (2, 4), 4: (1, 3), 0: ()}
_CONTEXT_HALF = {1: "1-3", 3: "1-3", 2: "2-4", 4: "2-4"}
_CONTEXT_ONE = {q: "0-1-3" for q in (0, 1, 3, 5, 6, 8)}
_CONTEXT_ONE.update({q: "0-2-4" for q in (2, 4, 7, 9)})


class SimError(ValueError):
    """Invalid simulation configuration or input."""


@dataclass(frozen=True)
class SimConfig:
    rounds: int
    seed: int = 0
    mode: str = "quantum"
    game: str = "spin-half"
    risk_policy: str = "never-risk"

    def __post_init__(self):
        if int(self.rounds) != self.rounds or self.rounds < 1:
            raise SimError(f"rounds must be a positive integer, got {self.rounds}")
        if not 0 <= int(self.seed) < 2**64:
            raise SimError("seed must fit in 64 unsigned bits")
        if self.mode not in ("quantum", "mechanical"):
            raise SimError(f"unknown mode {self.mode!r}")
        if self.game not in ("spin-half", "spin-one"):
            raise SimError(f"unknown game {self.game!r}")
        if self.risk_policy not in ("always-risk", "never-risk"):
            raise SimError(f"unknown risk policy {self.risk_policy!r}")


@dataclass(frozen=True)
class SimReport:
    mean_payoff: float
    std_error: float
    rounds_executed: int
    mode: str
    game: str
    seed: int
    per_context: dict
    trace: dict | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "mean_payoff": self.mean_payoff,
            "std_error": self.std_error,
            "rounds_executed": self.rounds_executed,
            "mode": self.mode,
            "game": self.game,
            "seed": self.seed,
            "per_context": self.per_context,
        }


def reaction(position: int, question: int):
    """Bob's reply to an atom question: ("yes"|"no", new ball position).

    He answers yes in place, or moves the ball one edge to make the
    answer yes; from the opposite corner (or across the isolated point)
    no move helps and the ball stays put.  Vertices are 0..4 with 0 the
    isolated point of the five-vertex game.
    """
    for name, v in (("position", position), ("question", question)):
        if v not in (0, 1, 2, 3, 4):
            raise SimError(f"{name} must be a vertex 0..4, got {v}")
    if question == position:
        return "yes", position
    if question in _ADJACENT[position]:
        return "yes", question
    return "no", position


def _draw_uniforms(cfg: SimConfig) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(int(cfg.seed)))
    return rng.random((int(cfg.rounds), 4))


def _stats(payoff: np.ndarray, factor: float):
    n = payoff.shape[0]
    mean = factor * float(payoff.mean())
    if n > 1:
        se = factor * float(payoff.std(ddof=1)) / math.sqrt(n)
    else:
        se = 0.0
    return mean, se


def _freq(num: int, den: int):
    return (num / den) if den else None


def simulate_quantum_half(
    spec: SpinHalfGameSpec, alpha_deg: float, beta_deg: float, cfg: SimConfig, trace: bool = False
) -> SimReport:
    """Born-sampled rounds of the four-corner game.

    Each round draws one of the two diagonal contexts uniformly, then
    Alice's question and Bob's position from their conditional Born
    weights in that context.  The reported mean is twice the per-round
    average so that its expectation equals the full two-context payoff
    functional (the uniform context draw halves each term).
    """
    if cfg.mode != "quantum" or cfg.game != "spin-half":
        raise SimError("config must have mode='quantum', game='spin-half'")
    p1, p2, _, _ = spin_half_profile(spec.theta_a, alpha_deg)
    q1, q2, _, _ = spin_half_profile(spec.theta_b, beta_deg)
    u = _draw_uniforms(cfg)
    payoff, ctx, question, position, answer = _kernels.quantum_half_rounds(
        float(p1), float(p2), float(q1), float(q2), spec.a, spec.b, spec.c, spec.d, u
    )
    mean, se = _stats(payoff, 2.0)
    per_context = {}
    for name, questions in (("1-3", (1, 3)), ("2-4", (2, 4))):
        ctx_id = 0 if name == "1-3" else 1
        in_ctx = ctx == ctx_id
        block = {
            "rounds": int(in_ctx.sum()),
            "asked": {},
            "no_given_ask": {},
            "revealed": {},
        }
        for q in questions:
            asked = question == q
            noes = asked & (answer == 0)
            block["asked"][str(q)] = int(asked.sum())
            block["no_given_ask"][str(q)] = _freq(int(noes.sum()), int(asked.sum()))
        for v in questions:
            block["revealed"][str(v)] = int(((position == v) & (answer == 0)).sum())
        per_context[name] = block
    tr = None
    if trace:
        tr = {
            "context": ctx,
            "question": question,
            "position": position,
            "answer": answer,
            "payoff": payoff,
        }
    return SimReport(mean, se, int(cfg.rounds), cfg.mode, cfg.game, int(cfg.seed), per_context, tr)


def simulate_mechanical_half(
    base_freqs,
    question_policy,
    cfg: SimConfig,
    spec: SpinHalfGameSpec | None = None,
    trace: bool = False,
) -> SimReport:
    """Rounds with an explicit ball: place, ask, react, record.

    ``base_freqs`` are the ball frequencies over vertices 1..4 before
    any question; ``question_policy`` is Alice's question distribution.
    Catch payoffs default to 1 unless a spec is given.  The conditional
    "no" frequency of question k estimates the base mass at its opposite
    vertex — not the Born weight, which is the point of the comparison.
    """
    if cfg.mode != "mechanical" or cfg.game != "spin-half":
        raise SimError("config must have mode='mechanical', game='spin-half'")
    base = np.asarray(base_freqs, dtype=np.float64)
    policy = np.asarray(question_policy, dtype=np.float64)
    for name, arr in (("base_freqs", base), ("question_policy", policy)):
        if arr.shape != (4,) or (arr < 0).any() or abs(arr.sum() - 1.0) > 1e-9:
            raise SimError(f"{name} must be 4 non-negative weights summing to 1")
    payoffs = spec.payoffs if spec is not None else (1.0, 1.0, 1.0, 1.0)
    base_cdf = np.cumsum(base)
    base_cdf[-1] = 1.0
    policy_cdf = np.cumsum(policy)
    policy_cdf[-1] = 1.0
    u = _draw_uniforms(cfg)
    payoff, question, position, answer, final_position = _kernels.mechanical_half_rounds(
        base_cdf, policy_cdf, *payoffs, u
    )
    mean, se = _stats(payoff, 1.0)
    per_context = {}
    for name, questions in (("1-3", (1, 3)), ("2-4", (2, 4))):
        block = {"rounds": 0, "asked": {}, "no_given_ask": {}, "revealed": {}}
        for q in questions:
            asked = question == q
            noes = asked & (answer == 0)
            block["rounds"] += int(asked.sum())
            block["asked"][str(q)] = int(asked.sum())
            block["no_given_ask"][str(q)] = _freq(int(noes.sum()), int(asked.sum()))
            block["revealed"][str(_OPPOSITE[q])] = int(noes.sum())
        per_context[name] = block
    tr = None
    if trace:
        tr = {
            "question": question,
            "position": position,
            "answer": answer,
            "final_position": final_position,
            "payoff": payoff,
        }
    return SimReport(mean, se, int(cfg.rounds), cfg.mode, cfg.game, int(cfg.seed), per_context, tr)


def simulate_quantum_one(
    spec: SpinOneGameSpec,
    phi,
    psi,
    cfg: SimConfig,
    question_weights=None,
    trace: bool = False,
) -> SimReport:
    """Born-sampled rounds of the five-vertex game with the risk protocol.

    Alice's first question is drawn from ``question_weights`` (default:
    proportional to her Born weight for each of the ten questions); Bob's
    position from his conditional Born weights in the context the
    question belongs to.  Under ``always-risk`` a negative corner answer
    is followed by asking the isolated point, and a negative answer on
    the isolated point by a uniformly drawn corner question (this
    consumes the risk draw); under ``never-risk`` Alice takes the safe
    payoff.  The mean is the raw per-round average for the induced
    question policy (no analytic functional is targeted here).
    """
    if cfg.mode != "quantum" or cfg.game != "spin-one":
        raise SimError("config must have mode='quantum', game='spin-one'")
    if not isinstance(phi, StrategyVector):
        phi = StrategyVector.spherical(*phi)
    if not isinstance(psi, StrategyVector):
        psi = StrategyVector.spherical(*psi)
    p = spin_one_profile(spec.theta_a, phi)
    q = spin_one_profile(spec.theta_b, psi)
    if question_weights is None:
        weights = np.asarray(p, dtype=np.float64)
    else:
        weights = np.asarray(question_weights, dtype=np.float64)
        if weights.shape != (10,) or (weights < 0).any() or weights.sum() <= 0:
            raise SimError("question_weights must be 10 non-negative weights")
    qcdf = np.cumsum(weights / weights.sum())
    qcdf[-1] = 1.0
    zcdf = np.array([q[0], min(q[0] + q[1], 1.0), 1.0])
    tcdf = np.array([q[0], min(q[0] + q[2], 1.0), 1.0])
    u = _draw_uniforms(cfg)
    payoff, first, second, position, answer1, answer2 = _kernels.quantum_one_rounds(
        qcdf,
        zcdf,
        tcdf,
        np.asarray(spec.u, dtype=np.float64),
        np.asarray(spec.v, dtype=np.float64),
        cfg.risk_policy == "always-risk",
        u,
    )
    mean, se = _stats(payoff, 1.0)
    per_context = {}
    for name, questions, vertices in (
        ("0-1-3", (0, 1, 3, 5, 6, 8), (0, 1, 3)),
        ("0-2-4", (2, 4, 7, 9), (0, 2, 4)),
    ):
        block = {"rounds": 0, "asked": {}, "no_given_ask": {}, "revealed": {}}
        for fq in questions:
            asked = first == fq
            noes = asked & (answer1 == 0)
            block["rounds"] += int(asked.sum())
            block["asked"][str(fq)] = int(asked.sum())
            block["no_given_ask"][str(fq)] = _freq(int(noes.sum()), int(asked.sum()))
        # a round pins Bob's vertex after a negative disjunction answer, a
        # second-question catch, or a "yes" on the isolated-point follow-up
        pinned = (
            ((first >= 5) & (answer1 == 0))
            | (answer2 == 0)
            | ((second == 0) & (answer2 == 1))
        )
        for v in vertices:
            block["revealed"][str(v)] = int(
                (pinned & (position == v) & np.isin(first, questions)).sum()
            )
        per_context[name] = block
    tr = None
    if trace:
        tr = {
            "first": first,
            "second": second,
            "position": position,
            "answer1": answer1,
            "answer2": answer2,
            "payoff": payoff,
        }
    return SimReport(mean, se, int(cfg.rounds), cfg.mode, cfg.game, int(cfg.seed), per_context, tr)


def frequency_check(report: SimReport, expected: Mapping) -> float:
    """Largest gap between observed and expected "no" frequencies.

    ``expected`` maps question ids to P(no | asked); questions never
    asked in the run are skipped.  Only quantum-mode reports qualify.
    """
    if report.mode != "quantum":
        raise SimError("frequency_check needs a quantum-mode report")
    worst = 0.0
    seen = False
    for block in report.per_context.values():
        for qid, freq in block["no_given_ask"].items():
            if freq is None:
                continue
            for key in (qid, int(qid)):
                if key in expected:
                    worst = max(worst, abs(freq - float(expected[key])))
                    seen = True
                    break
    if not seen:
        raise SimError("no expected frequency matched an asked question")
    return worst


def born_no_frequencies_half(spec: SpinHalfGameSpec, beta_deg: float) -> dict[int, float]:
    """Expected P(no | ask k) under Bob's Born profile at beta."""
    q1, q2, q3, q4 = spin_half_profile(spec.theta_b, beta_deg)
    return {1: float(q3), 2: float(q4), 3: float(q1), 4: float(q2)}


def born_no_frequencies_one(spec: SpinOneGameSpec, psi) -> dict[int, float]:
    """Expected P(no | first question) under Bob's Born profile."""
    if not isinstance(psi, StrategyVector):
        psi = StrategyVector.spherical(*psi)
    q = spin_one_profile(spec.theta_b, psi)
    return {
        0: float(1.0 - q[0]),
        1: float(q[0] + q[3]),
        2: float(q[0] + q[4]),
        3: float(q[0] + q[1]),
        4: float(q[0] + q[2]),
        5: float(q[0]),
        6: float(q[3]),
        7: float(q[4]),
        8: float(q[1]),
        9: float(q[2]),
    }
