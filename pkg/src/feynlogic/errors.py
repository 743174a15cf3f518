"""
Exception hierarchy for feynlogic.

Every precondition violation raised by the library derives from
FeynlogicError. Errors about bad values also derive from ValueError so
callers that already catch ValueError keep working.
"""

from __future__ import annotations


class FeynlogicError(Exception):
    """Base class for all feynlogic errors."""


# ------------------------------------------------------------------
# Experimental logic
# ------------------------------------------------------------------


class SequenceError(FeynlogicError, ValueError):
    """Base class for malformed sequences and failed combinations."""


class InvalidPartition(SequenceError):
    """A set of blocks is not a valid (or not a coarser) partition."""


class MismatchedJunction(SequenceError):
    """Series combination where the junction events differ."""


class NonAtomicEndpoint(SequenceError):
    """An endpoint outcome that must be atomic is coarse-grained."""


class NotParallelCompatible(SequenceError):
    """Parallel combination of sequences that do not differ at exactly one interior event."""


class LengthMismatch(SequenceError):
    """Composition of sequences of different lengths."""


class TimeMismatch(SequenceError):
    """Composition of sequences whose event times differ."""


class SameSystem(SequenceError):
    """Composition of two sequences that share a system."""


# ------------------------------------------------------------------
# Amplitudes and reconstruction
# ------------------------------------------------------------------


class ModelError(FeynlogicError, ValueError):
    """Base class for amplitude model problems."""


class UnknownTransition(ModelError, LookupError):
    """No transition matrix can be resolved for a measurement pair."""


class NotUnitary(ModelError):
    """A matrix that must be unitary is not, within tolerance."""


class AsymmetricTransitions(ModelError):
    """Transition probabilities are not symmetric where the classical oracle needs them."""


class NotHermitian(ModelError):
    """A matrix that must be Hermitian is not, within tolerance."""


class NormalizationFailure(FeynlogicError, ArithmeticError):
    """A state vector deviates from unit norm."""


class ReferenceMismatch(FeynlogicError, ValueError):
    """Objects specified with respect to different reference measurements were combined."""


class DimensionMismatch(FeynlogicError, ValueError):
    """Vector and matrix dimensions do not agree."""


# ------------------------------------------------------------------
# Labs and checks
# ------------------------------------------------------------------


class InvalidPosition(FeynlogicError, IndexError):
    """Insertion position is not strictly between two measurements."""


class OutOfRange(FeynlogicError, ValueError):
    """A scalar argument lies outside its admissible range."""


class ZeroCandidate(FeynlogicError, ValueError):
    """A composition candidate with F(1, 1) = 0, which is inadmissible."""


class DegenerateSegment(FeynlogicError, ValueError):
    """A path segment with non-positive duration."""


class ResourceLimit(FeynlogicError, ValueError):
    """A request exceeds the desk-scale limits."""


# ------------------------------------------------------------------
# Configuration and CLI
# ------------------------------------------------------------------


class ConfigError(FeynlogicError, ValueError):
    """Base class for experiment description problems."""


class ParseError(ConfigError):
    """The experiment description cannot be parsed or fails schema validation."""


class UnresolvedReference(ConfigError):
    """A name in the experiment description does not resolve."""


class UnknownSequence(ConfigError, LookupError):
    """The requested sequence is not declared."""
