"""Author-credit schemes and the checks that decide whether they are arbitrageable.

A scheme gives a paper with ``n`` authors a total credit ``total(n)`` and gives
the author at position ``i`` the share ``share(i, n)``.  Schemes are pure
functions of ``(i, n)``; when credit comes from citations, ``total(n)`` stands
for the expected value (for the Osório–Bornmann value function it plays the
role of ``v̄_n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

DEFAULT_TOL = 1e-9
MAX_AUTHORS = 100_000


class DomainError(ValueError):
    """An author count or position outside the scheme's domain."""


class SchemeParseError(ValueError):
    """A scheme string that does not match ``<name>`` or ``<name>:<real>``."""


@dataclass(frozen=True)
class CreditScheme:
    name: str
    total: Callable[[int], float] = field(repr=False, compare=False)
    share: Callable[[int, int], float] = field(repr=False, compare=False)
    max_n: int = MAX_AUTHORS


def _check_n(scheme: CreditScheme, n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"author count must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"author count must be >= 1, got {n}")
    if n > scheme.max_n:
        raise DomainError(f"author count {n} exceeds the maximum {scheme.max_n} for {scheme.name}")


def total_credit(scheme: CreditScheme, n: int) -> float:
    """Total credit of a paper with ``n`` authors."""
    _check_n(scheme, n)
    return scheme.total(n)


def position_share(scheme: CreditScheme, i: int, n: int) -> float:
    """Credit of the author in position ``i`` (1-based) of an ``n``-author paper."""
    _check_n(scheme, n)
    if not 1 <= i <= n:
        raise DomainError(f"position {i} outside 1..{n}")
    return scheme.share(i, n)


# -- built-in schemes ---------------------------------------------------------


def total_counting() -> CreditScheme:
    # every co-author gets a full article, so c^n = n
    return CreditScheme("total-counting", total=lambda n: float(n), share=lambda i, n: 1.0)


def fractional_counting() -> CreditScheme:
    return CreditScheme("fractional-counting", total=lambda n: 1.0, share=lambda i, n: 1.0 / n)


def first_author() -> CreditScheme:
    # constant total; violates A.2 on purpose
    return CreditScheme(
        "first-author",
        total=lambda n: 1.0,
        share=lambda i, n: 1.0 if i == 1 else 0.0,
    )


def power_scheme(alpha: float) -> CreditScheme:
    """Equal shares of a total that grows as ``n ** alpha``.

    For ``0 < alpha < 1`` the total grows with the author count while each
    individual share shrinks, so a single added author never pays off on one
    paper, yet exchanges across groups still do.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise SchemeParseError(f"power exponent must be finite, got {alpha}")
    return CreditScheme(
        f"power:{alpha:g}",
        total=lambda n: float(n) ** alpha,
        share=lambda i, n: float(n) ** (alpha - 1.0),
    )


BUILTIN_SCHEMES: dict[str, str] = {
    "total-counting": "c^n = n; every author receives 1",
    "fractional-counting": "c^n = 1; every author receives 1/n",
    "first-author": "c^n = 1; position 1 receives everything",
    "power:<alpha>": "c^n = n^alpha; every author receives n^(alpha-1)",
}

_FIXED = {
    "total-counting": total_counting,
    "fractional-counting": fractional_counting,
    "first-author": first_author,
}
_POWER_NAMES = ("power", "power-scheme")


def parse_scheme(text: str) -> CreditScheme:
    """Build a scheme from ``<name>`` or ``<name>:<real>``, e.g. ``power:0.5``."""
    name, sep, param = text.strip().partition(":")
    name = name.strip()
    if name in _FIXED:
        if sep:
            raise SchemeParseError(f"scheme {name!r} takes no parameter (got {text!r})")
        return _FIXED[name]()
    if name in _POWER_NAMES:
        if not sep or not param.strip():
            raise SchemeParseError(f"scheme {name!r} needs an exponent, e.g. '{name}:0.5'")
        try:
            alpha = float(param)
        except ValueError:
            raise SchemeParseError(f"bad exponent {param!r} in scheme {text!r}") from None
        return power_scheme(alpha)
    known = ", ".join(list(_FIXED) + ["power:<alpha>"])
    raise SchemeParseError(f"unknown scheme {text!r}; known: {known}")


# -- audits -------------------------------------------------------------------


@dataclass(frozen=True)
class SchemeAudit:
    scheme_name: str
    n_max: int
    additivity_violations: tuple[int, ...] = ()
    nonnegativity_violations: tuple[tuple[int, int], ...] = ()
    a2_violations: tuple[int, ...] = ()
    disincentive_violations: tuple[tuple[int, int, int], ...] = ()

    @property
    def additivity_ok(self) -> bool:
        return not self.additivity_violations

    @property
    def nonnegativity_ok(self) -> bool:
        return not self.nonnegativity_violations

    @property
    def a2_ok(self) -> bool:
        return not self.a2_violations

    @property
    def disincentive_ok(self) -> bool:
        return not self.disincentive_violations

    @property
    def arbitrage_eligible(self) -> bool:
        """Non-negative, additive and strictly increasing in author count."""
        return self.additivity_ok and self.nonnegativity_ok and self.a2_ok


def check_single_paper_disincentive(scheme: CreditScheme, n_max: int) -> list[tuple[int, int, int]]:
    """Return every ``(i, j, n)`` where adding one author does not cut the share.

    The author at position ``i`` of an ``n``-author paper lands at ``i + j``
    (``j >= 0``) once an author is added.  A triple is a violation when
    ``share(i + j, n + 1) >= share(i, n)``.  An empty list means one ghost
    author on one paper is always a strict loss for every existing author.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    violations = []
    for n in range(1, n_max):
        for i in range(1, n + 1):
            before = position_share(scheme, i, n)
            for j in range(0, n + 2 - i):
                if position_share(scheme, i + j, n + 1) >= before:
                    violations.append((i, j, n))
    return violations


def audit_scheme(scheme: CreditScheme, n_max: int, tol: float = DEFAULT_TOL) -> SchemeAudit:
    """Exhaustively check additivity, non-negativity, monotonicity and the disincentive.

    Additivity is compared within ``tol``; monotonicity (``total(n) < total(n+1)``
    for ``n < n_max``) is strict.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    additivity, negative, a2 = [], [], []
    totals = [total_credit(scheme, n) for n in range(1, n_max + 1)]
    for n in range(1, n_max + 1):
        shares = [position_share(scheme, i, n) for i in range(1, n + 1)]
        negative.extend((i, n) for i, s in enumerate(shares, start=1) if s < 0)
        if abs(math.fsum(shares) - totals[n - 1]) > tol:
            additivity.append(n)
    for n in range(1, n_max):
        if not totals[n - 1] < totals[n]:
            a2.append(n)
    return SchemeAudit(
        scheme_name=scheme.name,
        n_max=n_max,
        additivity_violations=tuple(additivity),
        nonnegativity_violations=tuple(negative),
        a2_violations=tuple(a2),
        disincentive_violations=tuple(check_single_paper_disincentive(scheme, n_max)),
    )
