"""Multinomial quotas and distinguishable permutations of group labels.

Group members are treated as interchangeable, so an author list becomes a
sequence of group indices (1-based).  All counts are exact Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

DEFAULT_CAP = 100_000


class EnumerationTooLarge(RuntimeError):
    def __init__(self, k: int, cap: int):
        self.k = k
        self.cap = cap
        super().__init__(f"enumeration too large: k = {k} permutations exceeds the cap of {cap}")


@dataclass(frozen=True)
class GroupSizes:
    sizes: tuple[int, ...]

    def __init__(self, sizes: Sequence[int]):
        sizes = tuple(sizes)
        if not sizes:
            raise ValueError("at least one group is required")
        for s in sizes:
            if not isinstance(s, int) or isinstance(s, bool) or s < 1:
                raise ValueError(f"group sizes must be positive integers, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return len(self.sizes)


def _as_groups(groups: GroupSizes | Sequence[int]) -> GroupSizes:
    return groups if isinstance(groups, GroupSizes) else GroupSizes(groups)


def multinomial(parts: Sequence[int]) -> int:
    """``(sum parts)! / prod(part!)``, exactly."""
    parts = list(parts)
    if not parts:
        raise ValueError("multinomial needs at least one part")
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {parts}")
    result = math.factorial(sum(parts))
    for p in parts:
        result //= math.factorial(p)
    return result


def paper_quota(groups: GroupSizes | Sequence[int], i: int) -> int:
    """Number of papers group ``i`` contributes: the multinomial with ``n_i`` lowered by one."""
    groups = _as_groups(groups)
    if not 1 <= i <= groups.m:
        raise ValueError(f"group index {i} outside 1..{groups.m}")
    parts = list(groups.sizes)
    parts[i - 1] -= 1
    return multinomial(parts)


def verify_pascal(groups: GroupSizes | Sequence[int]) -> bool:
    """Check ``k == k_1 + ... + k_m``."""
    groups = _as_groups(groups)
    return multinomial(groups.sizes) == sum(paper_quota(groups, i) for i in range(1, groups.m + 1))


def _check_cap(k: int, cap: int | None) -> None:
    if cap is not None and k > cap:
        raise EnumerationTooLarge(k, cap)


def enumerate_label_permutations(
    groups: GroupSizes | Sequence[int], cap: int | None = DEFAULT_CAP
) -> Iterator[tuple[int, ...]]:
    """Yield every distinguishable ordering of the group labels in lexicographic order.

    Raises :class:`EnumerationTooLarge` immediately (not on first ``next``)
    when the count exceeds ``cap``.  ``cap=None`` disables the limit.
    """
    groups = _as_groups(groups)
    _check_cap(multinomial(groups.sizes), cap)
    return _lex_permutations([g for g, size in enumerate(groups.sizes, start=1) for _ in range(size)])


def _lex_permutations(slots: list[int]) -> Iterator[tuple[int, ...]]:
    # classic next-permutation; skips duplicates because it only ever
    # moves to the next strictly larger arrangement
    a = sorted(slots)
    n = len(a)
    while True:
        yield tuple(a)
        j = n - 2
        while j >= 0 and a[j] >= a[j + 1]:
            j -= 1
        if j < 0:
            return
        l = n - 1
        while a[l] <= a[j]:
            l -= 1
        a[j], a[l] = a[l], a[j]
        a[j + 1:] = reversed(a[j + 1:])


def occupancy_table(groups: GroupSizes | Sequence[int], cap: int | None = DEFAULT_CAP) -> list[list[int]]:
    """``table[i-1][p-1]``: permutations with group ``i`` in position ``p``."""
    groups = _as_groups(groups)
    table = [[0] * groups.n for _ in range(groups.m)]
    for perm in enumerate_label_permutations(groups, cap):
        for p, g in enumerate(perm):
            table[g - 1][p] += 1
    return table


def position_occupancy(
    groups: GroupSizes | Sequence[int], i: int, p: int, cap: int | None = DEFAULT_CAP
) -> int:
    groups = _as_groups(groups)
    if not 1 <= i <= groups.m:
        raise ValueError(f"group index {i} outside 1..{groups.m}")
    if not 1 <= p <= groups.n:
        raise ValueError(f"position {p} outside 1..{groups.n}")
    return sum(1 for perm in enumerate_label_permutations(groups, cap) if perm[p - 1] == i)
