"""Exit criteria.  Each test records one PASS/FAIL line, printed in the terminal summary."""

import contextlib
import math
import random
import subprocess
import sys

from conftest import ACCEPTANCE_LINES
from ghostcredit.arbitrage import (
    GroupProfile,
    assign_members,
    brute_force_credit,
    build_exchange_plan,
    build_factorial_plan,
    build_full_collusion_plan,
    exchange_ledger,
    honest_ledger,
    per_member_credit,
    verify_proposition,
)
from ghostcredit.multiset import multinomial, occupancy_table, paper_quota
from ghostcredit.schemes import (
    check_single_paper_disincentive,
    first_author,
    fractional_counting,
    power_scheme,
    total_counting,
    total_credit,
)
from oracles import compositions

TOL = 1e-9
K_LIMIT = 10_000
RANGE = [s for s in compositions(9, 4) if multinomial(s) <= K_LIMIT]
MULTI_GROUP = [s for s in RANGE if len(s) >= 2]


@contextlib.contextmanager
def criterion(number, text):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  criterion {number}: {text}")
        print(f"FAIL  criterion {number}: {text}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  criterion {number}: {text}")
    print(f"PASS  criterion {number}: {text}")


def groups_of(sizes):
    return [GroupProfile.of_size(f"G{j}", s) for j, s in enumerate(sizes, start=1)]


def quota_by_factorials(sizes, i):
    # independent of paper_quota: (n-1)! n_i / prod(n_j!)
    n = sum(sizes)
    return math.factorial(n - 1) * sizes[i] // math.prod(math.factorial(s) for s in sizes)


def test_1_two_author_arbitrage():
    with criterion(1, "sizes (1,1), total-counting: honest 1, exchange 2, gain 1 per group (exact)"):
        ledger = exchange_ledger(build_exchange_plan(groups_of((1, 1))), total_counting(), TOL)
        for r in ledger.rows:
            assert r.honest == 1
            assert r.exchange_closed_form == 2 and r.exchange_brute_force == 2
            assert r.gain == 1


def test_2_full_collusion_five_singletons():
    with criterion(2, "5 singleton groups, total-counting full collusion: every author 5 vs honest 1"):
        plan = assign_members(build_full_collusion_plan(groups_of((1,) * 5)))
        credit = per_member_credit(plan, total_counting())
        assert len(credit) == 5 and all(c == 5 for c in credit.values())
        honest = honest_ledger(plan.groups, total_counting(), [1] * 5)
        assert all(h == 1 for h in honest.values())


def test_3_lemma_identity():
    schemes = [total_counting(), fractional_counting(), power_scheme(0.5)]
    with criterion(3, f"brute-force exchange credit == k_i c^n within {TOL} over {len(RANGE)} size vectors x 3 schemes"):
        worst = 0.0
        for sizes in RANGE:
            plan = build_exchange_plan(groups_of(sizes), cap=K_LIMIT)
            n = sum(sizes)
            for scheme in schemes:
                brute = brute_force_credit(plan, scheme)
                for j, g in enumerate(plan.groups):
                    closed = quota_by_factorials(sizes, j) * total_credit(scheme, n)
                    worst = max(worst, abs(brute[g.id] - closed))
                    assert abs(brute[g.id] - closed) <= TOL, (sizes, scheme.name, g.id)
        print(f"  largest |brute - closed| = {worst:.3g}")


def test_4_pascal_recursion():
    rng = random.Random(20261015)
    with criterion(4, "k == sum k_i exactly for 200 random size vectors (m <= 5, n <= 12)"):
        for _ in range(200):
            m = rng.randint(1, 5)
            n = rng.randint(m, 12)
            cuts = sorted(rng.sample(range(1, n), m - 1))
            sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
            assert len(sizes) == m and sum(sizes) == n and min(sizes) >= 1
            k = multinomial(sizes)
            quotas = [paper_quota(sizes, i) for i in range(1, m + 1)]
            assert k == sum(quotas)
            assert k == math.factorial(n) // math.prod(math.factorial(s) for s in sizes)


def test_5_occupancy_uniformity():
    with criterion(5, f"every position holds group i exactly k_i times over {len(RANGE)} size vectors"):
        for sizes in RANGE:
            table = occupancy_table(sizes, cap=K_LIMIT)
            for j, row in enumerate(table):
                assert row == [quota_by_factorials(sizes, j)] * sum(sizes), sizes


def test_6_proposition_positivity():
    eligible = [total_counting(), power_scheme(0.5)]
    with criterion(6, f"strict gains for A.2 schemes and zero gains for first-author over {len(MULTI_GROUP)} multi-group vectors"):
        for sizes in MULTI_GROUP:
            for scheme in eligible:
                rep = verify_proposition(groups_of(sizes), scheme, cap=K_LIMIT, tol=TOL)
                assert rep.a2_holds and rep.asserted
                assert all(r.gain > 0 for r in rep.ledger.rows), (sizes, scheme.name)
            rep = verify_proposition(groups_of(sizes), first_author(), cap=K_LIMIT, tol=TOL)
            assert not rep.a2_holds
            assert all(r.gain == 0 for r in rep.ledger.rows), sizes


def test_7_coexistence():
    scheme = power_scheme(0.5)
    with criterion(7, "power:0.5 has no single-paper violations for n <= 10 yet gains for (2,1) and (2,2,1)"):
        assert check_single_paper_disincentive(scheme, 10) == []
        for sizes in [(2, 1), (2, 2, 1)]:
            rep = verify_proposition(groups_of(sizes), scheme)
            assert all(r.gain > 0 for r in rep.ledger.rows)


def test_8_factorial_variant():
    groups = [GroupProfile("A", ("a1", "a2")), GroupProfile("B", ("b1",))]
    schemes = [total_counting(), power_scheme(0.5), fractional_counting(), first_author()]
    with criterion(8, "sizes (2,1) factorial plan: 6 papers, equal credit within groups, totals (n-1)! n_i c^n"):
        plan = build_factorial_plan(groups)
        assert plan.k == 6
        for scheme in schemes:
            credit = per_member_credit(plan, scheme)
            assert abs(credit["a1"] - credit["a2"]) <= TOL
            c3 = total_credit(scheme, 3)
            assert abs(credit["a1"] + credit["a2"] - 2 * 2 * c3) <= TOL
            assert abs(credit["b1"] - 2 * 1 * c3) <= TOL
            ledger = exchange_ledger(plan, scheme, TOL)
            assert [r.quota for r in ledger.rows] == [4, 2]


def test_9_plan_output_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "ghostcredit", "plan", "--groups", "2,2,1", "--scheme", "power:0.5"]
    with criterion(9, "two `plan` runs with identical config give byte-identical output (table, csv, json)"):
        for fmt in ("table", "csv", "json"):
            first = subprocess.run(cmd + ["--format", fmt], capture_output=True, check=True).stdout
            second = subprocess.run(cmd + ["--format", fmt], capture_output=True, check=True).stdout
            assert first and first == second
