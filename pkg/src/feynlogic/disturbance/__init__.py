"""
No-disturbance lab.

Inserting a trivial measurement must leave every outcome probability
unchanged under Feynman's rules, while a classical account in which the
unregistered outcome still takes a definite value breaks repeatability.
"""

from .experiment import Experiment, Stage, insert_trivial, repeat_layout

from .predictions import (
    DisturbanceReport,
    classical_prediction,
    disturbance_report,
    is_repeat_layout,
    quantum_prediction,
    repeatability_gap,
)

from .sampling import binomial_bounds, monte_carlo

__all__ = [
    # Layouts
    'Experiment',
    'Stage',
    'insert_trivial',
    'repeat_layout',

    # Predictions
    'DisturbanceReport',
    'classical_prediction',
    'disturbance_report',
    'is_repeat_layout',
    'quantum_prediction',
    'repeatability_gap',

    # Sampling
    'binomial_bounds',
    'monte_carlo',
]
