"""Deterministic table / CSV / JSON rendering of audits, plans and ledgers.

Every command first builds a plain payload dict; the three formats are views
of that one payload, so they always carry the same numbers.  Reals are
rounded to 9 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Sequence

FORMATS = ("table", "csv", "json")
PAPER_LIST_LIMIT = 100
VIOLATION_PREVIEW = 5


def fmt_num(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(x, ".9g")


def _json_num(x):
    if x is None or isinstance(x, (int, bool)):
        return x
    return float(format(x, ".9g"))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    fmt_row = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    lines = [fmt_row(headers), fmt_row(["-" * w for w in widths])]
    lines.extend(fmt_row(r) for r in rows)
    return lines


def _csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -- audit --------------------------------------------------------------------

_CHECKS = (
    ("additivity", "additivity (A.1)"),
    ("nonnegativity", "non-negativity"),
    ("a2", "monotone total (A.2)"),
    ("disincentive", "single-paper disincentive"),
)


def audit_payload(audit, tol: float) -> dict:
    checks = {}
    for key, _ in _CHECKS:
        violations = getattr(audit, f"{key}_violations")
        checks[key] = {
            "ok": getattr(audit, f"{key}_ok"),
            "violations": [list(v) if isinstance(v, tuple) else v for v in violations],
        }
    return {
        "command": "audit",
        "scheme": audit.scheme_name,
        "n_max": audit.n_max,
        "tolerance": _json_num(tol),
        "checks": checks,
        "arbitrage_eligible": audit.arbitrage_eligible,
    }


def _violation_text(vs: list, limit: int = VIOLATION_PREVIEW) -> str:
    shown = ["(" + ",".join(map(str, v)) + ")" if isinstance(v, list) else str(v) for v in vs[:limit]]
    more = f" +{len(vs) - limit} more" if len(vs) > limit else ""
    return " ".join(shown) + more


def render_audit(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(payload)
    rows = [
        (label, _yes(payload["checks"][key]["ok"]), str(len(payload["checks"][key]["violations"])),
         _violation_text(payload["checks"][key]["violations"]))
        for key, label in _CHECKS
    ]
    if fmt == "csv":
        full = [
            (key, _yes(payload["checks"][key]["ok"]), len(payload["checks"][key]["violations"]),
             _violation_text(payload["checks"][key]["violations"], limit=10**9))
            for key, _ in _CHECKS
        ]
        return _csv(["check", "ok", "violation_count", "violations"], full)
    lines = [
        f"scheme: {payload['scheme']}",
        f"n_max: {payload['n_max']}",
        f"tolerance: {fmt_num(payload['tolerance'])}",
        "",
        *_table(["check", "ok", "violations", "first violations"], rows),
        "",
        f"arbitrage-eligible (A.1, non-negative, A.2): {_yes(payload['arbitrage_eligible'])}",
    ]
    return "\n".join(lines) + "\n"


# -- disincentive -------------------------------------------------------------


def disincentive_payload(scheme_name: str, n_max: int, violations: list[tuple[int, int, int]],
                         shares: dict[tuple[int, int, int], tuple[float, float]],
                         exchange_note: dict | None) -> dict:
    return {
        "command": "disincentive",
        "scheme": scheme_name,
        "n_max": n_max,
        "holds": not violations,
        "violations": [
            {"i": i, "j": j, "n": n,
             "share_before": _json_num(shares[(i, j, n)][0]),
             "share_after": _json_num(shares[(i, j, n)][1])}
            for i, j, n in violations
        ],
        "exchange_note": exchange_note,
    }


def render_disincentive(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(payload)
    headers = ["i", "j", "n", "share_before", "share_after"]
    rows = [[str(v["i"]), str(v["j"]), str(v["n"]), fmt_num(v["share_before"]), fmt_num(v["share_after"])]
            for v in payload["violations"]]
    if fmt == "csv":
        return _csv(headers, rows)
    lines = [f"scheme: {payload['scheme']}", f"n_max: {payload['n_max']}", ""]
    if payload["holds"]:
        lines.append("disincentive holds: adding one author to one paper lowers every existing share")
    else:
        lines.append(f"disincentive violated at {len(rows)} (i, j, n) triples "
                     "where share(i+j, n+1) >= share(i, n):")
        lines.append("")
        lines.extend(_table(headers, rows))
    note = payload["exchange_note"]
    if note is not None:
        lines += [
            "",
            f"note: A.2 holds up to n={payload['n_max']}, so ghost-author exchanges still pay.",
            f"  two single authors swapping second authorship each go from "
            f"{fmt_num(note['honest'])} to {fmt_num(note['exchange'])} (gain {fmt_num(note['gain'])});",
            "  run `plan` for any group sizes.",
        ]
    return "\n".join(lines) + "\n"


# -- plan ---------------------------------------------------------------------

_LEDGER_HEADERS = ["group", "size", "quota", "honest", "exchange_closed_form", "exchange_brute_force", "gain"]


def plan_payload(report, members: dict[str, float] | None, papers: list[dict] | None,
                 policy: str | None, cap_note: dict | None) -> dict:
    ledger = report.ledger
    return {
        "command": "plan",
        "scheme": report.scheme_name,
        "variant": report.variant,
        "sizes": list(report.sizes),
        "n": report.n,
        "m": len(report.sizes),
        "k": report.k,
        "quotas": {r.group_id: r.quota for r in ledger.rows},
        "quota_sum_ok": report.k == sum(report.quotas),
        "pascal_ok": report.pascal_ok,
        "a2_holds_up_to_n": report.a2_holds,
        "gains_asserted": report.asserted,
        "all_groups_gain": report.all_gain,
        "failing_groups": report.failing_groups,
        "enumeration": cap_note,
        "ledger": [
            {
                "group": r.group_id,
                "size": r.size,
                "quota": r.quota,
                "honest": _json_num(r.honest),
                "exchange_closed_form": _json_num(r.exchange_closed_form),
                "exchange_brute_force": _json_num(r.exchange_brute_force),
                "gain": _json_num(r.gain),
            }
            for r in ledger.rows
        ],
        "totals": {
            "honest": _json_num(ledger.honest_total),
            "exchange": _json_num(ledger.exchange_total),
            "exchange_closed_form": _json_num(_column_sum(r.exchange_closed_form for r in ledger.rows)),
            "exchange_brute_force": _json_num(_column_sum(r.exchange_brute_force for r in ledger.rows)),
            "gain": _json_num(ledger.gain_total),
        },
        "policy": policy,
        "member_credit": None if members is None else {k: _json_num(v) for k, v in members.items()},
        "papers": papers,
    }


def _column_sum(values) -> float | None:
    values = list(values)
    return None if any(v is None for v in values) else math.fsum(values)


def _ledger_rows(payload: dict) -> list[list[str]]:
    rows = [
        [r["group"], str(r["size"]), str(r["quota"]), fmt_num(r["honest"]),
         fmt_num(r["exchange_closed_form"]), fmt_num(r["exchange_brute_force"]), fmt_num(r["gain"])]
        for r in payload["ledger"]
    ]
    t = payload["totals"]
    rows.append(["TOTAL", str(payload["n"]), str(sum(r["quota"] for r in payload["ledger"])),
                 fmt_num(t["honest"]), fmt_num(t["exchange_closed_form"]),
                 fmt_num(t["exchange_brute_force"]), fmt_num(t["gain"])])
    return rows


def render_plan(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(payload)
    if fmt == "csv":
        return _csv(_LEDGER_HEADERS, _ledger_rows(payload))
    quotas = payload["quotas"]
    lines = [
        f"scheme: {payload['scheme']}",
        f"variant: {payload['variant']}",
        "groups: " + " ".join(f"{g}({s})" for g, s in zip(quotas, payload["sizes"])),
        f"n = {payload['n']}, m = {payload['m']}",
        f"k = {payload['k']}",
        "quotas: " + " ".join(f"{g}={q}" for g, q in quotas.items()),
        f"k = {' + '.join(str(q) for q in quotas.values())}: {_yes(payload['quota_sum_ok'])}",
        f"multinomial Pascal recursion: {_yes(payload['pascal_ok'])}",
        f"A.2 holds up to n: {_yes(payload['a2_holds_up_to_n'])}",
    ]
    if payload["enumeration"] is not None:
        e = payload["enumeration"]
        lines.append(f"enumeration refused: k = {e['k']} exceeds cap {e['cap']}; closed-form ledger only")
    lines += ["", *_table(_LEDGER_HEADERS, _ledger_rows(payload)), ""]
    if payload["all_groups_gain"]:
        verdict = "every group gains"
    else:
        verdict = "groups without a strict gain: " + ", ".join(payload["failing_groups"])
    if payload["gains_asserted"]:
        verdict += " (asserted: A.2 holds and m >= 2)"
    else:
        verdict += " (not asserted)"
    lines.append(f"result: {verdict}")
    if payload["member_credit"] is not None:
        lines += ["", f"member credit (policy: {payload['policy']})"]
        lines += _table(["member", "credit"], [[m, fmt_num(c)] for m, c in payload["member_credit"].items()])
    if payload["papers"] is not None:
        lines += ["", f"papers ({len(payload['papers'])})"]
        for p in payload["papers"]:
            authors = p["authors"] or p["groups"]
            lines.append(f"  {p['index']:>3}: " + " ".join(authors))
    elif payload["enumeration"] is None:
        lines += ["", f"papers: {payload['k']} (list omitted above {PAPER_LIST_LIMIT})"]
    return "\n".join(lines) + "\n"
