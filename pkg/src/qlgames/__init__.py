"""Macroscopic quantum-like guessing games.

Two zero-sum games in which the answering player may move a hidden ball
to an adjacent vertex before answering, so the questioner's logic of
verified propositions forms a nondistributive orthocomplemented lattice.
The package builds those lattices, represents them by real projectors,
evaluates Born-rule strategy payoffs, searches for equilibria, simulates
repeated play, and quantifies the interference correction to classical
total probability.
"""

from ._kernels import BACKEND as kernel_backend
from .contextual import InterferenceReport, bayes_total, interference_decomposition, unperturbed_frequencies
from .equilibrium import (
    EquilibriumResult,
    MixedStrategyPair,
    best_response_alice,
    best_response_bob,
    saddle_search_half,
    saddle_search_one,
    solve_classical,
)
from .games import (
    PayoffMatrix,
    SpinHalfGameSpec,
    SpinOneGameSpec,
    expected_payoff_half,
    expected_payoff_half_operator,
    expected_payoff_one,
    payoff_matrix_half,
    payoff_matrix_one,
    pure_saddle_exists,
)
from .hilbert import (
    Projector,
    StrategyVector,
    born_probability,
    check_representation,
    spin_half_projectors,
    spin_half_representation,
    spin_one_projectors,
    spin_one_representation,
    subspace_join,
    subspace_meet,
)
from .lattice import (
    FiniteLattice,
    build_spin_half_lattice,
    build_spin_one_lattice,
    certify_distributivity,
    certify_modularity,
    certify_orthocomplement,
)
from .playsim import (
    SimConfig,
    SimReport,
    frequency_check,
    reaction,
    simulate_mechanical_half,
    simulate_quantum_half,
    simulate_quantum_one,
)

__version__ = "0.1.0"
