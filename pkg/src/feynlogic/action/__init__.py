"""
Amplitude of near-classical paths.

Discretized paths, their classical action, the amplitude-action rule
z = e^{iαS}, checks of candidate amplitude maps, and a lattice sum over
paths compared with the analytic free-particle kernel.
"""

from .paths import PathSpec, concatenate, invert, path_from_samples, random_path, split, straight_path

from .functionals import ActionFunctional, Lagrangian, action, segment_actions

from .rule import (
    ACTION_MAPS,
    AmplitudeMapFit,
    ActionScale,
    amplitude_from_action,
    check_candidate_amplitude_map,
    evaluate_amplitude_map,
    fit_amplitude_map,
)

from .lattice import (
    COMPARISON_ANGLE,
    COMPARISON_GRID,
    COMPARISON_STEPS,
    COMPARISON_TOL,
    KernelComparison,
    LatticeSpec,
    chirp_lattice,
    compare_with_free_kernel,
    free_particle_kernel,
    lattice_propagator,
    single_step_kernel,
)

__all__ = [
    # Paths
    'PathSpec',
    'concatenate',
    'invert',
    'path_from_samples',
    'random_path',
    'split',
    'straight_path',

    # Action
    'ActionFunctional',
    'Lagrangian',
    'action',
    'segment_actions',

    # Amplitude rule
    'ACTION_MAPS',
    'AmplitudeMapFit',
    'ActionScale',
    'amplitude_from_action',
    'check_candidate_amplitude_map',
    'evaluate_amplitude_map',
    'fit_amplitude_map',

    # Lattice
    'COMPARISON_ANGLE',
    'COMPARISON_GRID',
    'COMPARISON_STEPS',
    'COMPARISON_TOL',
    'KernelComparison',
    'LatticeSpec',
    'chirp_lattice',
    'compare_with_free_kernel',
    'free_particle_kernel',
    'lattice_propagator',
    'single_step_kernel',
]
