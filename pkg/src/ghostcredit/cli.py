"""Command-line front end: ``audit``, ``plan``, ``disincentive`` and ``schemes list``.

Options come from an optional JSON config file and are overridden by flags.
Exit codes: 0 success, 1 validation error, 2 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .arbitrage import (
    POLICIES,
    VARIANTS,
    ConsistencyError,
    GroupProfile,
    SchemeError,
    ValidationError,
    assign_members,
    per_member_credit,
    validate_groups,
    verify_proposition,
    verify_proposition_closed_form,
)
from .multiset import DEFAULT_CAP, EnumerationTooLarge
from .report import (
    FORMATS,
    PAPER_LIST_LIMIT,
    audit_payload,
    disincentive_payload,
    plan_payload,
    render_audit,
    render_disincentive,
    render_plan,
)
from .schemes import (
    BUILTIN_SCHEMES,
    DEFAULT_TOL,
    DomainError,
    SchemeParseError,
    audit_scheme,
    check_single_paper_disincentive,
    parse_scheme,
    position_share,
    total_credit,
)

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    groups: list[GroupProfile] = field(default_factory=list)
    scheme: str = "total-counting"
    variant: str = "lemma"
    policy: str = "round-robin"
    n_max_audit: int = 10
    enumeration_cap: int = DEFAULT_CAP
    tolerance: float = DEFAULT_TOL
    output_format: str = "table"


def group_label(index: int) -> str:
    """0 -> A, 25 -> Z, 26 -> AA, ..."""
    label = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        label = chr(ord("A") + rem) + label
    return label


def parse_group_sizes(text: str) -> list[GroupProfile]:
    try:
        sizes = [int(part) for part in text.split(",")]
    except ValueError:
        raise ConfigError(f"--groups: expected sizes like '2,2,1' or a config path, got {text!r}") from None
    if any(s < 1 for s in sizes):
        raise ConfigError(f"--groups: sizes must be positive, got {text!r}")
    return [GroupProfile.of_size(group_label(j), s) for j, s in enumerate(sizes)]


def _groups_from_json(raw) -> list[GroupProfile]:
    if isinstance(raw, str):
        return parse_group_sizes(raw)
    if not isinstance(raw, list) or not raw:
        raise ConfigError("groups: expected a non-empty list")
    groups = []
    for j, entry in enumerate(raw):
        where = f"groups[{j}]"
        if isinstance(entry, int) and not isinstance(entry, bool):
            if entry < 1:
                raise ConfigError(f"{where}: size must be positive")
            groups.append(GroupProfile.of_size(group_label(j), entry))
            continue
        if not isinstance(entry, dict):
            raise ConfigError(f"{where}: expected an object with 'id' and 'members' or 'size'")
        unknown = set(entry) - {"id", "members", "size"}
        if unknown:
            raise ConfigError(f"{where}: unknown field(s) {sorted(unknown)}")
        gid = str(entry.get("id", group_label(j)))
        if "members" in entry:
            members = entry["members"]
            if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
                raise ConfigError(f"{where}.members: expected a list of strings")
            if "size" in entry and entry["size"] != len(members):
                raise ConfigError(f"{where}.size: {entry['size']} does not match {len(members)} members")
            groups.append(GroupProfile(gid, tuple(members)))
        elif "size" in entry:
            size = entry["size"]
            if not isinstance(size, int) or isinstance(size, bool) or size < 1:
                raise ConfigError(f"{where}.size: expected a positive integer")
            groups.append(GroupProfile.of_size(gid, size))
        else:
            raise ConfigError(f"{where}: needs 'members' or 'size'")
    return groups


_CONFIG_FIELDS = {
    "groups", "scheme", "variant", "policy", "n_max_audit", "enumeration_cap", "tolerance", "output_format",
}


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(data) - _CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"{path}: unknown field(s) {sorted(unknown)}")
    cfg = ScenarioConfig()
    try:
        if "groups" in data:
            cfg.groups = _groups_from_json(data["groups"])
        for key in ("scheme", "variant", "policy", "output_format"):
            if key in data:
                if not isinstance(data[key], str):
                    raise ConfigError(f"{key}: expected a string")
                setattr(cfg, key, data[key])
        for key in ("n_max_audit", "enumeration_cap"):
            if key in data:
                if not isinstance(data[key], int) or isinstance(data[key], bool):
                    raise ConfigError(f"{key}: expected an integer")
                setattr(cfg, key, data[key])
        if "tolerance" in data:
            if not isinstance(data["tolerance"], (int, float)) or isinstance(data["tolerance"], bool):
                raise ConfigError("tolerance: expected a number")
            cfg.tolerance = float(data["tolerance"])
    except (ConfigError, ValidationError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return cfg


def _looks_like_path(text: str) -> bool:
    return text.endswith(".json") or Path(text).is_file()


def resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    if args.groups is not None:
        if _looks_like_path(args.groups):
            # a config passed via --groups acts as --config unless one was given
            file_cfg = load_config(args.groups)
            if args.config:
                cfg.groups = file_cfg.groups
            else:
                cfg = file_cfg
        else:
            cfg.groups = parse_group_sizes(args.groups)
    overrides = {
        "scheme": args.scheme, "variant": args.variant, "policy": args.policy,
        "n_max_audit": args.n_max, "enumeration_cap": args.cap, "tolerance": args.tol,
        "output_format": args.format,
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if cfg.variant not in VARIANTS:
        raise ConfigError(f"variant: expected one of {VARIANTS}, got {cfg.variant!r}")
    if cfg.policy not in POLICIES:
        raise ConfigError(f"policy: expected one of {POLICIES}, got {cfg.policy!r}")
    if cfg.output_format not in FORMATS:
        raise ConfigError(f"output_format: expected one of {FORMATS}, got {cfg.output_format!r}")
    if cfg.enumeration_cap < 1:
        raise ConfigError("enumeration_cap: must be positive")
    if not cfg.tolerance >= 0:
        raise ConfigError("tolerance: must be non-negative")
    return cfg


# -- commands -----------------------------------------------------------------


def run_audit(cfg: ScenarioConfig) -> tuple[str, int]:
    scheme = parse_scheme(cfg.scheme)
    audit = audit_scheme(scheme, cfg.n_max_audit, cfg.tolerance)
    code = EXIT_OK if audit.additivity_ok and audit.nonnegativity_ok else EXIT_INVALID
    return render_audit(audit_payload(audit, cfg.tolerance), cfg.output_format), code


def run_disincentive(cfg: ScenarioConfig) -> tuple[str, int]:
    scheme = parse_scheme(cfg.scheme)
    violations = check_single_paper_disincentive(scheme, cfg.n_max_audit)
    shares = {
        (i, j, n): (position_share(scheme, i, n), position_share(scheme, i + j, n + 1))
        for i, j, n in violations
    }
    note = None
    if not violations and cfg.n_max_audit >= 2 and audit_scheme(scheme, cfg.n_max_audit, cfg.tolerance).a2_ok:
        honest, exchange = total_credit(scheme, 1), total_credit(scheme, 2)
        note = {"honest": honest, "exchange": exchange, "gain": exchange - honest}
    payload = disincentive_payload(scheme.name, cfg.n_max_audit, violations, shares, note)
    return render_disincentive(payload, cfg.output_format), EXIT_OK


def run_plan(cfg: ScenarioConfig) -> tuple[str, int]:
    if not cfg.groups:
        raise ConfigError("groups: none given; use --groups 2,2,1 or a config file")
    groups = validate_groups(cfg.groups)
    scheme = parse_scheme(cfg.scheme)
    cap_note = None
    try:
        report = verify_proposition(groups, scheme, cfg.variant, cfg.enumeration_cap, cfg.tolerance)
    except EnumerationTooLarge as exc:
        cap_note = {"k": exc.k, "cap": exc.cap}
        report = verify_proposition_closed_form(groups, scheme, cfg.variant, cfg.tolerance)

    members = papers = policy = None
    plan = report.plan
    if plan is not None:
        if plan.authors is None:
            plan = assign_members(plan, cfg.policy)
            policy = cfg.policy
        else:
            policy = "all permutations"
        members = per_member_credit(plan, scheme)
        if plan.k <= PAPER_LIST_LIMIT:
            papers = [
                {"index": p, "groups": list(labels), "authors": list(authors)}
                for p, (labels, authors) in enumerate(zip(plan.papers, plan.authors), start=1)
            ]
    payload = plan_payload(report, members, papers, policy, cap_note)
    return render_plan(payload, cfg.output_format), EXIT_OK


def run_schemes_list(cfg: ScenarioConfig) -> tuple[str, int]:
    width = max(len(k) for k in BUILTIN_SCHEMES)
    if cfg.output_format == "json":
        return json.dumps(BUILTIN_SCHEMES, indent=2) + "\n", EXIT_OK
    if cfg.output_format == "csv":
        rows = "".join(f"{k},{v}\r\n" for k, v in BUILTIN_SCHEMES.items())
        return "scheme,definition\r\n" + rows, EXIT_OK
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in BUILTIN_SCHEMES.items()), EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario file; flags override its values")
    common.add_argument("--scheme", help="credit scheme: <name> or <name>:<real>, e.g. power:0.5")
    common.add_argument("--groups", help="group sizes like 2,2,1 or a JSON config path")
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--policy", choices=POLICIES, help="member assignment for slot-level plans")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--cap", type=int, help=f"enumeration cap (default {DEFAULT_CAP})")
    common.add_argument("--tol", type=float, help=f"additivity / ledger tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--n-max", dest="n_max", type=int, help="largest author count for audit/disincentive")
    common.add_argument("--output", help="also write the report to this file")

    parser = argparse.ArgumentParser(
        prog="ghostcredit", description="Audit credit schemes and build ghost-authorship exchange plans."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("audit", parents=[common], help="check A.1, non-negativity, A.2 and the disincentive")
    sub.add_parser("plan", parents=[common], help="build an exchange plan and its credit ledger")
    sub.add_parser("disincentive", parents=[common], help="list single-paper disincentive violations")
    schemes = sub.add_parser("schemes", parents=[common], help="built-in schemes")
    schemes.add_argument("action", choices=["list"])
    return parser


_COMMANDS = {
    "audit": run_audit,
    "plan": run_plan,
    "disincentive": run_disincentive,
    "schemes": run_schemes_list,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        text, code = _COMMANDS[args.command](cfg)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ConfigError, ValidationError, SchemeParseError, SchemeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
