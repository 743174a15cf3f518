"""
Algebraic identities of the experimental logic.

Each identity is a function drawing random operands from a SequenceFactory
and returning both sides as sequences; the suite checks structural equality
over many draws.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Tuple

from ..report import CheckResult
from .sampling import SequenceFactory
from .sequences import Sequence, compose, invert, parallel, series

logger = logging.getLogger(__name__)

IdentityCase = Callable[[SequenceFactory], Tuple[Sequence, Sequence]]

# Registry of identities keyed by report name
IDENTITIES: Dict[str, IdentityCase] = {}


def identity(name: str):
    """Register an identity under `name`."""

    def decorator(func: IdentityCase) -> IdentityCase:
        IDENTITIES[name] = func
        return func

    return decorator


@identity("parallel-commutative")
def parallel_commutative(f: SequenceFactory):
    a, b = f.parallel_family(2)
    return parallel(a, b), parallel(b, a)


@identity("parallel-associative")
def parallel_associative(f: SequenceFactory):
    a, b, c = f.parallel_family(3)
    return parallel(parallel(a, b), c), parallel(a, parallel(b, c))


@identity("series-associative")
def series_associative(f: SequenceFactory):
    a, b, c = f.series_chain(3)
    return series(series(a, b), c), series(a, series(b, c))


@identity("series-left-distributive")
def series_left_distributive(f: SequenceFactory):
    a, b, c = f.left_distributive()
    return series(a, parallel(b, c)), parallel(series(a, b), series(a, c))


@identity("series-right-distributive")
def series_right_distributive(f: SequenceFactory):
    a, b, c = f.right_distributive()
    return series(parallel(b, c), a), parallel(series(b, a), series(c, a))


@identity("compose-associative")
def compose_associative(f: SequenceFactory):
    a, b, c = f.simultaneous(3)
    return compose(compose(a, b), c), compose(a, compose(b, c))


@identity("compose-interchange")
def compose_interchange(f: SequenceFactory):
    a, b, c, d = f.interchange()
    return compose(series(a, b), series(c, d)), series(compose(a, c), compose(b, d))


@identity("compose-left-distributive")
def compose_left_distributive(f: SequenceFactory):
    a, b, c = f.composition_distributive()
    return compose(a, parallel(b, c)), parallel(compose(a, b), compose(a, c))


@identity("compose-right-distributive")
def compose_right_distributive(f: SequenceFactory):
    a, b, c = f.composition_distributive()
    return compose(parallel(b, c), a), parallel(compose(b, a), compose(c, a))


@identity("invert-involution")
def invert_involution(f: SequenceFactory):
    a = f.sequence()
    return invert(invert(a)), a


@identity("invert-series")
def invert_series(f: SequenceFactory):
    a, b = f.series_chain(2)
    return invert(series(a, b)), series(invert(b), invert(a))


def check_identity(name: str, factory: SequenceFactory, trials: int) -> CheckResult:
    """
    Check one registered identity on `trials` random operand tuples.

    Args:
        name: Registered identity name
        factory: Operand source
        trials: Number of draws

    Returns:
        CheckResult whose residual is the number of failing draws
    """
    case = IDENTITIES[name]
    failures = 0
    witness: Optional[dict] = None
    for _ in range(trials):
        lhs, rhs = case(factory)
        if lhs != rhs:
            failures += 1
            if witness is None:
                witness = {"lhs": str(lhs), "rhs": str(rhs)}
    logger.debug(f"Identity {name}: {failures}/{trials} failures")
    return CheckResult(
        name=f"identity:{name}",
        passed=failures == 0,
        residual=float(failures),
        tolerance=0.0,
        witness=witness,
        details={"trials": trials},
    )


def run_identity_suite(
    factory: SequenceFactory, trials: int = 1000, names: Optional[List[str]] = None
) -> List[CheckResult]:
    """Check every registered identity (or the named subset)."""
    results = [check_identity(name, factory, trials) for name in (names or list(IDENTITIES))]
    logger.info(f"Identity suite: {sum(r.passed for r in results)}/{len(results)} passed")
    return results
