"""
feynlogic: Feynman's rules as an operational calculus.

Measurement sequences and their algebra, amplitude models with the sum,
product and probability rules, reconstruction of states, operators and
unitary evolution, the no-disturbance argument, the composite-amplitude
law and the amplitude-action rule, each with numerical verification suites.
"""

__version__ = "0.1.0"

from .errors import FeynlogicError
from .settings import Settings, get_settings, set_settings

__all__ = [
    '__version__',
    'FeynlogicError',
    'Settings',
    'get_settings',
    'set_settings',
]
