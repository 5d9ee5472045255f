"""Exception hierarchy and global size limits."""

from __future__ import annotations

from dataclasses import dataclass


class OrbicharError(Exception):
    """Base class for library errors."""


class CapExceeded(OrbicharError):
    """A group or set is larger than the configured cap."""


class BudgetExceeded(OrbicharError):
    """A homomorphism search visited more nodes than allowed."""


class DomainError(OrbicharError, ValueError):
    """An argument violates an operation's precondition."""


class UnsupportedError(OrbicharError):
    pass


class NoSolutionError(OrbicharError):
    pass


class IntegralityError(OrbicharError):
    pass


@dataclass
class Limits:
    order_cap: int = 24
    catalog_max: int = 16
    gset_cap: int = 96
    budget: int = 10**7


# Mutated only by the CLI before any work starts.
LIMITS = Limits()


def set_limits(**kw) -> Limits:
    for k, v in kw.items():
        if v is None:
            continue
        if not hasattr(LIMITS, k):
            raise TypeError(f"unknown limit {k!r}")
        if int(v) <= 0:
            raise DomainError(f"{k} must be positive")
        setattr(LIMITS, k, int(v))
    return LIMITS


def check_order(n: int, what: str = "group", cap: int | None = None) -> None:
    cap = LIMITS.order_cap if cap is None else cap
    if n > cap:
        raise CapExceeded(f"{what} of order {n} exceeds order cap {cap}")
