"""Credit arbitrage through ghost-authorship exchanges.

If a paper's total credit grows with its number of authors, disjoint
research groups can all gain by listing each other on their papers.  This
package builds those exchange plans and checks the gain both in closed form
and by summing every author slot.
"""

__version__ = "0.1.0"

from .arbitrage import (  # noqa: E402
    ConsistencyError,
    CreditLedger,
    ExchangePlan,
    GroupCredit,
    GroupProfile,
    PropositionReport,
    SchemeError,
    ValidationError,
    assign_members,
    build_exchange_plan,
    build_factorial_plan,
    build_full_collusion_plan,
    build_plan,
    closed_form_ledger,
    exchange_ledger,
    honest_ledger,
    per_member_credit,
    quotas,
    verify_proposition,
    verify_proposition_closed_form,
)
from .multiset import (  # noqa: E402
    EnumerationTooLarge,
    GroupSizes,
    enumerate_label_permutations,
    multinomial,
    occupancy_table,
    paper_quota,
    position_occupancy,
    verify_pascal,
)
from .schemes import (  # noqa: E402
    CreditScheme,
    DomainError,
    SchemeAudit,
    SchemeParseError,
    audit_scheme,
    check_single_paper_disincentive,
    first_author,
    fractional_counting,
    parse_scheme,
    position_share,
    power_scheme,
    total_counting,
    total_credit,
)
