"""
Numerical tolerances and desk-scale limits.

This module centralizes the constants shared by the verification suites.
Unlike settings.py, nothing here is read from the environment.
"""

# Tolerances
UNITARY_TOL = 1e-10
PROBABILITY_TOL = 1e-12
AMPLITUDE_SLACK = 1e-9
RULE_TOL = 1e-12
NORMALIZATION_TOL = 1e-9
AXIOM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
ORTHONORMAL_TOL = 1e-10
SYMMETRY_TOL = 1e-9

# Desk-scale limits
MAX_DIMENSION = 64
MAX_GRID = 256
MAX_STEPS = 128

# Reserved names
IDENTITY_INTERACTION = "identity"
INVERSE_SUFFIX = "^-1"
FACTOR_SEPARATOR = "⊗"

# Config schema
SCHEMA_VERSION = 1
