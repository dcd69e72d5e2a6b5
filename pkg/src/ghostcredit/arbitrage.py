"""Ghost-authorship exchange plans and the credit ledgers that compare them with honest publishing.

Three plans are supported:

``lemma``
    one paper per distinguishable ordering of group labels; group ``i``
    brings ``k_i`` papers and collects ``k_i * c^n``.
``factorial``
    one paper per ordering of all ``n`` authors; ``k = n!`` and
    ``k_i = (n-1)! * n_i``, and members of a group end up with equal credit.
``full-collusion``
    each group's single paper lists every author, origin group first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .multiset import (
    DEFAULT_CAP,
    EnumerationTooLarge,
    GroupSizes,
    enumerate_label_permutations,
    multinomial,
    paper_quota,
    verify_pascal,
)
from .schemes import DEFAULT_TOL, CreditScheme, SchemeAudit, audit_scheme, position_share, total_credit

VARIANTS = ("lemma", "factorial", "full-collusion")
POLICIES = ("round-robin", "first-member")


class ValidationError(ValueError):
    """Malformed groups: empty, duplicated ids or overlapping membership."""


class ConsistencyError(RuntimeError):
    """Two routes to the same quantity disagree; this is a bug, not an outcome."""


class SchemeError(ValueError):
    """The scheme fails additivity or non-negativity where the construction needs it."""


@dataclass(frozen=True)
class GroupProfile:
    id: str
    members: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValidationError(f"group {self.id!r} has no members")
        if len(set(self.members)) != len(self.members):
            raise ValidationError(f"group {self.id!r} lists a member twice")

    @property
    def size(self) -> int:
        return len(self.members)

    @classmethod
    def of_size(cls, id: str, size: int) -> GroupProfile:
        return cls(id, tuple(f"{id}-{j}" for j in range(1, size + 1)))


def validate_groups(groups: Sequence[GroupProfile]) -> tuple[GroupProfile, ...]:
    groups = tuple(groups)
    if not groups:
        raise ValidationError("at least one group is required")
    ids = [g.id for g in groups]
    if len(set(ids)) != len(ids):
        raise ValidationError(f"group ids must be unique, got {ids}")
    owner: dict[str, str] = {}
    for g in groups:
        for member in g.members:
            if member in owner:
                raise ValidationError(
                    f"member {member!r} belongs to both {owner[member]!r} and {g.id!r}; groups must be disjoint"
                )
            owner[member] = g.id
    return groups


def group_sizes(groups: Sequence[GroupProfile]) -> GroupSizes:
    return GroupSizes([g.size for g in groups])


@dataclass(frozen=True)
class ExchangePlan:
    """Papers as sequences of group ids, optionally resolved to members."""

    variant: str
    groups: tuple[GroupProfile, ...]
    papers: tuple[tuple[str, ...], ...]
    authors: tuple[tuple[str, ...], ...] | None = None

    @property
    def k(self) -> int:
        return len(self.papers)

    @property
    def member_assignment(self) -> dict[tuple[int, int], str] | None:
        """``(paper index, slot index) -> member``, both 0-based."""
        if self.authors is None:
            return None
        return {(p, s): a for p, row in enumerate(self.authors) for s, a in enumerate(row)}


def quotas(groups: Sequence[GroupProfile], variant: str) -> list[int]:
    """Papers each group would publish honestly under ``variant``."""
    sizes = group_sizes(groups)
    if variant == "lemma":
        return [paper_quota(sizes, i) for i in range(1, sizes.m + 1)]
    if variant == "factorial":
        return [math.factorial(sizes.n - 1) * s for s in sizes.sizes]
    if variant == "full-collusion":
        return [1] * sizes.m
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def build_exchange_plan(groups: Sequence[GroupProfile], cap: int | None = DEFAULT_CAP) -> ExchangePlan:
    groups = validate_groups(groups)
    ids = [g.id for g in groups]
    papers = tuple(
        tuple(ids[g - 1] for g in perm) for perm in enumerate_label_permutations(group_sizes(groups), cap)
    )
    return ExchangePlan("lemma", groups, papers)


def build_factorial_plan(groups: Sequence[GroupProfile], cap: int | None = DEFAULT_CAP) -> ExchangePlan:
    groups = validate_groups(groups)
    roster = [(g.id, m) for g in groups for m in g.members]
    k = math.factorial(len(roster))
    if cap is not None and k > cap:
        raise EnumerationTooLarge(k, cap)
    perms = list(itertools.permutations(roster))
    return ExchangePlan(
        "factorial",
        groups,
        papers=tuple(tuple(gid for gid, _ in p) for p in perms),
        authors=tuple(tuple(m for _, m in p) for p in perms),
    )


def build_full_collusion_plan(groups: Sequence[GroupProfile]) -> ExchangePlan:
    groups = validate_groups(groups)
    papers = []
    for origin in groups:
        order = [origin] + [g for g in groups if g is not origin]
        papers.append(tuple(g.id for g in order for _ in g.members))
    return ExchangePlan("full-collusion", groups, tuple(papers))


def build_plan(groups: Sequence[GroupProfile], variant: str, cap: int | None = DEFAULT_CAP) -> ExchangePlan:
    if variant == "lemma":
        return build_exchange_plan(groups, cap)
    if variant == "factorial":
        return build_factorial_plan(groups, cap)
    if variant == "full-collusion":
        return build_full_collusion_plan(groups)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


# -- ledgers ------------------------------------------------------------------


@dataclass(frozen=True)
class GroupCredit:
    group_id: str
    size: int
    quota: int
    honest: float
    exchange_closed_form: float | None
    exchange_brute_force: float | None
    gain: float


@dataclass(frozen=True)
class CreditLedger:
    variant: str
    scheme_name: str
    n: int
    rows: tuple[GroupCredit, ...]

    @property
    def honest_total(self) -> float:
        return math.fsum(r.honest for r in self.rows)

    @property
    def exchange_total(self) -> float:
        return math.fsum(r.honest + r.gain for r in self.rows)

    @property
    def gain_total(self) -> float:
        return math.fsum(r.gain for r in self.rows)

    def gains(self) -> dict[str, float]:
        return {r.group_id: r.gain for r in self.rows}


def honest_ledger(
    groups: Sequence[GroupProfile], scheme: CreditScheme, quotas: Sequence[int]
) -> dict[str, float]:
    """Credit when group ``i`` publishes its ``k_i`` papers with only its own members."""
    if len(quotas) != len(groups):
        raise ValueError("one quota per group is required")
    return {g.id: float(k) * total_credit(scheme, g.size) for g, k in zip(groups, quotas)}


def _slot_sums(papers: Iterable[Sequence[str]], scheme: CreditScheme) -> dict[str, list[float]]:
    share_cache: dict[int, list[float]] = {}
    per_paper: dict[str, list[float]] = {}
    for paper in papers:
        n = len(paper)
        shares = share_cache.get(n)
        if shares is None:
            shares = share_cache[n] = [position_share(scheme, p, n) for p in range(1, n + 1)]
        acc: dict[str, float] = {}
        for who, s in zip(paper, shares):
            acc[who] = acc.get(who, 0.0) + s
        for who, s in acc.items():
            per_paper.setdefault(who, []).append(s)
    return per_paper


def brute_force_credit(plan: ExchangePlan, scheme: CreditScheme) -> dict[str, float]:
    """Sum every slot's share into its group, papers taken in index order."""
    sums = _slot_sums(plan.papers, scheme)
    return {g.id: math.fsum(sums.get(g.id, ())) for g in plan.groups}


def exchange_ledger(plan: ExchangePlan, scheme: CreditScheme, tol: float = DEFAULT_TOL) -> CreditLedger:
    """Honest vs exchange credit per group, by closed form and by slot summation.

    Raises :class:`ConsistencyError` if the two routes differ by more than ``tol``.
    """
    groups = plan.groups
    n = sum(g.size for g in groups)
    ks = quotas(groups, plan.variant)
    honest = honest_ledger(groups, scheme, ks)
    brute = brute_force_credit(plan, scheme)
    c_n = total_credit(scheme, n)
    rows = []
    for g, k in zip(groups, ks):
        closed = None if plan.variant == "full-collusion" else float(k) * c_n
        if closed is not None and abs(closed - brute[g.id]) > tol:
            raise ConsistencyError(
                f"group {g.id!r}: closed form {closed!r} != brute force {brute[g.id]!r} under {scheme.name}"
            )
        exchange = brute[g.id] if closed is None else closed
        rows.append(GroupCredit(g.id, g.size, k, honest[g.id], closed, brute[g.id], exchange - honest[g.id]))
    return CreditLedger(plan.variant, scheme.name, n, tuple(rows))


def closed_form_ledger(
    groups: Sequence[GroupProfile], scheme: CreditScheme, variant: str = "lemma"
) -> CreditLedger:
    """Ledger without enumerating any paper; works far beyond the enumeration cap."""
    if variant == "full-collusion":
        raise ValueError("full-collusion has no per-group closed form; build the plan instead")
    groups = validate_groups(groups)
    n = sum(g.size for g in groups)
    ks = quotas(groups, variant)
    honest = honest_ledger(groups, scheme, ks)
    c_n = total_credit(scheme, n)
    rows = tuple(
        GroupCredit(g.id, g.size, k, honest[g.id], float(k) * c_n, None, float(k) * c_n - honest[g.id])
        for g, k in zip(groups, ks)
    )
    return CreditLedger(variant, scheme.name, n, rows)


# -- the proposition ----------------------------------------------------------


@dataclass(frozen=True)
class PropositionReport:
    variant: str
    scheme_name: str
    sizes: tuple[int, ...]
    k: int
    quotas: tuple[int, ...]
    pascal_ok: bool
    audit: SchemeAudit
    ledger: CreditLedger
    plan: ExchangePlan | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def a2_holds(self) -> bool:
        return self.audit.a2_ok

    @property
    def asserted(self) -> bool:
        """Whether strict gains are claimed (and therefore checked) for this scenario."""
        return self.a2_holds and len(self.sizes) >= 2 and self.variant != "full-collusion"

    @property
    def failing_groups(self) -> list[str]:
        return [r.group_id for r in self.ledger.rows if not r.gain > 0]

    @property
    def all_gain(self) -> bool:
        return not self.failing_groups


def _prepare(groups: Sequence[GroupProfile], scheme: CreditScheme, variant: str, tol: float):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    groups = validate_groups(groups)
    sizes = group_sizes(groups)
    audit = audit_scheme(scheme, max(sizes.n, 2), tol)
    if not (audit.additivity_ok and audit.nonnegativity_ok):
        raise SchemeError(
            f"{scheme.name} fails additivity at n={list(audit.additivity_violations)} "
            f"or non-negativity at {list(audit.nonnegativity_violations)}"
        )
    if variant == "lemma":
        k = multinomial(sizes.sizes)
    elif variant == "factorial":
        k = math.factorial(sizes.n)
    else:
        k = sizes.m
    return groups, sizes, audit, k


def _finish(report: PropositionReport) -> PropositionReport:
    if report.asserted and not report.all_gain:
        raise ConsistencyError(
            f"A.2 holds up to n={report.n} yet groups {report.failing_groups} do not gain under {report.scheme_name}"
        )
    return report


def verify_proposition(
    groups: Sequence[GroupProfile],
    scheme: CreditScheme,
    variant: str = "lemma",
    cap: int | None = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
) -> PropositionReport:
    """Build the plan, compute both ledgers and check that every group gains.

    When the scheme is monotone up to ``n`` and there are at least two groups
    a non-positive gain raises :class:`ConsistencyError`; otherwise the
    non-gaining groups are reported in ``failing_groups``.
    """
    groups, sizes, audit, k = _prepare(groups, scheme, variant, tol)
    plan = build_plan(groups, variant, cap)
    ledger = exchange_ledger(plan, scheme, tol)
    return _finish(
        PropositionReport(
            variant, scheme.name, sizes.sizes, k, tuple(r.quota for r in ledger.rows),
            verify_pascal(sizes), audit, ledger, plan,
        )
    )


def verify_proposition_closed_form(
    groups: Sequence[GroupProfile],
    scheme: CreditScheme,
    variant: str = "lemma",
    tol: float = DEFAULT_TOL,
) -> PropositionReport:
    """Same checks as :func:`verify_proposition` without enumerating papers."""
    groups, sizes, audit, k = _prepare(groups, scheme, variant, tol)
    ledger = closed_form_ledger(groups, scheme, variant)
    return _finish(
        PropositionReport(
            variant, scheme.name, sizes.sizes, k, tuple(r.quota for r in ledger.rows),
            verify_pascal(sizes), audit, ledger, None,
        )
    )


# -- members ------------------------------------------------------------------


def assign_members(plan: ExchangePlan, policy: str = "round-robin") -> ExchangePlan:
    """Resolve every group slot to a concrete member.

    ``round-robin`` cycles through each group's roster slot by slot, carrying
    the position over from one paper to the next; ``first-member`` always
    picks the lexicographically smallest member.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    if plan.variant == "factorial":
        raise ValueError("factorial plans already name every author")
    by_id = {g.id: g for g in plan.groups}
    counters = {g.id: 0 for g in plan.groups}
    authors = []
    for paper in plan.papers:
        row = []
        for gid in paper:
            members = by_id[gid].members
            if policy == "first-member":
                row.append(min(members))
            else:
                row.append(members[counters[gid] % len(members)])
                counters[gid] += 1
        authors.append(tuple(row))
    return ExchangePlan(plan.variant, plan.groups, plan.papers, tuple(authors))


def per_member_credit(plan: ExchangePlan, scheme: CreditScheme) -> dict[str, float]:
    """Credit per member in roster order; members never listed get 0."""
    if plan.authors is None:
        raise ValueError("plan has unassigned slots; call assign_members first")
    sums = _slot_sums(plan.authors, scheme)
    return {m: math.fsum(sums.get(m, ())) for g in plan.groups for m in g.members}


def group_totals_from_members(plan: ExchangePlan, credit: Mapping[str, float]) -> dict[str, float]:
    return {g.id: math.fsum(credit[m] for m in g.members) for g in plan.groups}
