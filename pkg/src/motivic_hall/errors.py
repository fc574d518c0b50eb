"""Exception types and the enumeration budget shared by all brute-force routines."""

import contextlib
import os

DEFAULT_BUDGET = 10**7


class HallError(Exception):
    pass


class ValidationError(HallError, ValueError):
    """Malformed input: bad shapes, cyclic quivers, non-subgroups, ..."""


class BudgetExceeded(HallError):
    """An exhaustive enumeration would exceed the configured budget."""


class ConsistencyError(HallError):
    """Two independent computations of the same quantity disagree."""


class DomainError(HallError, ZeroDivisionError):
    """Evaluation at a pole."""


_budget = None


def get_budget():
    if _budget is not None:
        return _budget
    env = os.environ.get("HALL_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def set_budget(value):
    global _budget
    if value is not None and value <= 0:
        raise ValidationError("budget must be positive")
    _budget = value


@contextlib.contextmanager
def budget(value):
    global _budget
    old = _budget
    set_budget(value)
    try:
        yield
    finally:
        _budget = old


def check_budget(points, what="enumeration"):
    limit = get_budget()
    if points > limit:
        raise BudgetExceeded(f"{what} needs {points} raw points, budget is {limit}")
