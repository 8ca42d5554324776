"""Command-line interface.

Commands: group | atoms | min-delta | lengths | rho | delta-star | davenport | verify.
Output formats: table (human), json, csv.  Every flag can also be set through
an environment variable named PMZS_<FLAG> (upper case, dashes to underscores).

Exit codes: 0 success, 1 domain or usage error, 2 resource cap exceeded,
3 verification suite failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .atoms import AtomCache, atom_length_profile, davenport_monoid, enumerate_atoms
from .delta_star import FAIL, NOT_APPLICABLE, delta_star
from .errors import DomainError, PmzsError, ResourceLimitError
from .groups import davenport, group_invariants
from .limits import DEFAULT_LIMITS, Limits
from .notation import (
    format_group,
    format_subset,
    parse_group,
    parse_sequence,
    parse_subset,
    subset_to_json,
)
from .relations import Factorizer, min_delta_of_atoms, rho_k
from .suite import run_suite

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_RESOURCE = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_DOMAIN)


def _env_default(name: str, fallback):
    value = os.environ.get(f"PMZS_{name}")
    return value if value is not None else fallback


def _build_parser() -> _Parser:
    parser = _Parser(prog="pmzs", description="Invariants of plus-minus weighted zero-sum sequence monoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json", "csv"], default=_env_default("FORMAT", "table"))
    common.add_argument("--cache-dir", default=_env_default("CACHE_DIR", None))
    common.add_argument("--jobs", type=int, default=int(_env_default("JOBS", "1")))
    common.add_argument("--max-atom-len", type=int, default=int(_env_default("MAX_ATOM_LEN", str(DEFAULT_LIMITS.max_atom_length))))
    common.add_argument("--max-order", type=int, default=int(_env_default("MAX_ORDER", str(DEFAULT_LIMITS.max_sweep_order))),
                        help="largest group order swept completely by delta-star")
    common.add_argument("--no-prune", action="store_true", default=bool(int(_env_default("NO_PRUNE", "0"))))
    common.add_argument("--rho-cap", type=int, default=int(_env_default("RHO_CAP", str(DEFAULT_LIMITS.rho_cap))))
    common.add_argument("--max-support", type=int, default=int(_env_default("MAX_SUPPORT", str(DEFAULT_LIMITS.max_support))))

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="structural invariants of a group")
    p.add_argument("group")

    p = sub.add_parser("atoms", parents=[common], help="complete atom list over a subset")
    p.add_argument("group")
    p.add_argument("subset", help="subset literal like '[(1),(3)]', or 'all' for G minus 0")

    p = sub.add_parser("min-delta", parents=[common], help="exact minimal distance over a subset")
    p.add_argument("group")
    p.add_argument("subset")

    p = sub.add_parser("lengths", parents=[common], help="set of factorization lengths of a sequence")
    p.add_argument("group")
    p.add_argument("sequence", help="sequence literal like '[(1)^10]'")

    p = sub.add_parser("rho", parents=[common], help="k-th local elasticity")
    p.add_argument("group")
    p.add_argument("subset", nargs="?", default="all")
    p.add_argument("-k", type=int, default=2)

    p = sub.add_parser("delta-star", parents=[common], help="sweep minimal distances over subsets")
    p.add_argument("group")

    p = sub.add_parser("davenport", parents=[common], help="Davenport constant of the group or of the monoid over a subset")
    p.add_argument("group")
    p.add_argument("subset", nargs="?", default=None)

    p = sub.add_parser("verify", parents=[common], help="run the mechanical verification suite")
    p.add_argument("target", help="a group literal, or 'all-small'")
    p.add_argument("--out", default=None, help="also write the JSON report to this path")
    return parser


def _limits_from(args) -> Limits:
    return Limits(
        max_support=args.max_support,
        max_atom_length=args.max_atom_len,
        max_davenport_order=DEFAULT_LIMITS.max_davenport_order,
        max_automorphism_order=DEFAULT_LIMITS.max_automorphism_order,
        max_sweep_order=args.max_order,
        rho_cap=args.rho_cap,
    )


def _cache_from(args) -> AtomCache | None:
    return AtomCache(args.cache_dir) if args.cache_dir else None


def _subset_from(args, group):
    if args.subset == "all":
        return tuple(group.element_at(i) for i in range(1, group.order))
    return parse_subset(group, args.subset)


def _emit(args, payload: dict, table_lines: list[str], csv_rows: list[list] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        for row in csv_rows if csv_rows is not None else [[k, payload[k]] for k in sorted(payload)]:
            writer.writerow(row)
        print(out.getvalue(), end="")
    else:
        for line in table_lines:
            print(line)


def _cmd_group(args) -> int:
    group = parse_group(args.group)
    info = group_invariants(group)
    try:
        d_exact = davenport(group, max_order=DEFAULT_LIMITS.max_davenport_order)
        d_text = str(d_exact)
    except ResourceLimitError as exc:
        d_exact = None
        d_text = f">= {exc.lower_bound} (search capped)"
    payload = {
        "group": format_group(group),
        "order": info.order,
        "exponent": info.exponent,
        "rank": info.rank,
        "d_star": info.d_star,
        "davenport": d_exact,
        "m_ranks": {str(p): r for p, r in info.m_ranks.items()},
    }
    lines = [
        f"group      {payload['group']}",
        f"order      {info.order}",
        f"exponent   {info.exponent}",
        f"rank       {info.rank}",
    ]
    lines += [f"r_{p}        {r}" for p, r in info.m_ranks.items()]
    lines += [f"D*         {info.d_star}", f"D          {d_text}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_atoms(args) -> int:
    group = parse_group(args.group)
    subset = _subset_from(args, group)
    atoms = enumerate_atoms(group, subset, limits=_limits_from(args), cache=_cache_from(args))
    profile = atom_length_profile(atoms)
    payload = atoms.to_json_dict()
    payload.update({
        "count": len(atoms),
        "max_length": profile.max_length,
        "gcd_lengths_minus_2": profile.gcd_lengths_minus_2,
    })
    lines = [f"{len(atoms)} atoms over {format_subset(atoms.ground)} in {format_group(group)}"
             + (" (plus the prime atom (0))" if atoms.includes_zero else "")]
    lines += [f"  {atoms.sequence(k)}   length {sum(atoms.vectors[k])}" for k in range(len(atoms))]
    lines += [f"max length {profile.max_length}", f"gcd(length-2) {profile.gcd_lengths_minus_2}"]
    csv_rows = [["atom", "length"]] + [[str(atoms.sequence(k)), sum(atoms.vectors[k])] for k in range(len(atoms))]
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def _cmd_min_delta(args) -> int:
    group = parse_group(args.group)
    subset = _subset_from(args, group)
    atoms = enumerate_atoms(group, subset, limits=_limits_from(args), cache=_cache_from(args))
    value = min_delta_of_atoms(atoms)
    payload = {
        "group": format_group(group),
        "subset": subset_to_json(subset),
        "min_delta": value,
    }
    text = "empty distance set" if value is None else str(value)
    _emit(args, payload, [f"min delta = {text}"])
    return EXIT_OK


def _cmd_lengths(args) -> int:
    group = parse_group(args.group)
    seq = parse_sequence(group, args.sequence)
    atoms = enumerate_atoms(group, seq.support, limits=_limits_from(args), cache=_cache_from(args))
    result = Factorizer(atoms).factorizations(seq)
    payload = result.to_json_dict()
    lines = [
        f"element        {seq}",
        f"factorizations {len(result.factorizations)}",
        f"lengths        {{{', '.join(map(str, result.lengths))}}}",
        f"delta          {{{', '.join(map(str, result.delta))}}}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_rho(args) -> int:
    group = parse_group(args.group)
    subset = _subset_from(args, group)
    value = rho_k(group, subset, args.k, limits=_limits_from(args), cache=_cache_from(args))
    payload = {"group": format_group(group), "k": args.k, "rho_k": value}
    _emit(args, payload, [f"rho_{args.k} = {value}"])
    return EXIT_OK


def _cmd_delta_star(args) -> int:
    group = parse_group(args.group)
    report = delta_star(
        group,
        limits=_limits_from(args),
        jobs=args.jobs,
        prune=not args.no_prune,
        cache=_cache_from(args),
    )
    payload = report.to_json_dict()
    values = "{" + ", ".join(map(str, report.delta_star)) + "}"
    lines = [
        f"delta*({format_group(group)}) = {values}   max = {report.max_delta}"
        + ("" if report.complete else "   [partial sweep]"),
    ]
    for subset, value in report.table:
        lines.append(f"  {format_subset(report.subset_elements(subset))}   min delta = {value}")
    for subset, reason in report.skipped:
        lines.append(f"  {format_subset(report.subset_elements(subset))}   skipped: {reason}")
    csv_rows = [["subset", "min_delta"]]
    csv_rows += [[format_subset(report.subset_elements(s)), "" if v is None else v] for s, v in report.table]
    _emit(args, payload, lines, csv_rows)
    return EXIT_OK


def _cmd_davenport(args) -> int:
    group = parse_group(args.group)
    if args.subset is None:
        value = davenport(group, max_order=DEFAULT_LIMITS.max_davenport_order)
        payload = {"group": format_group(group), "davenport_group": value}
        _emit(args, payload, [f"D({format_group(group)}) = {value}"])
    else:
        subset = _subset_from(args, group)
        value = davenport_monoid(group, subset, limits=_limits_from(args), cache=_cache_from(args))
        payload = {
            "group": format_group(group),
            "subset": subset_to_json(subset),
            "davenport_monoid": value,
        }
        _emit(args, payload, [f"D(monoid) = {value}"])
    return EXIT_OK


def _cmd_verify(args) -> int:
    result = run_suite(
        args.target,
        limits=_limits_from(args),
        jobs=args.jobs,
        prune=not args.no_prune,
        cache=_cache_from(args),
    )
    payload = result.to_json_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["check", "group", "status"])
        for c in result.checks:
            writer.writerow([c.check_id, c.group, c.status])
        print(out.getvalue(), end="")
    else:
        width = max(len(c.check_id) for c in result.checks) + 2
        for c in result.checks:
            marker = {NOT_APPLICABLE: "n/a ", FAIL: "FAIL"}.get(c.status, "ok  ")
            line = f"{marker}  {c.check_id:<{width}} {c.group}"
            if c.status == FAIL:
                line += f"   {c.details}"
            print(line)
        counts = payload["counts"]
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['not_applicable']} not applicable")
    return EXIT_OK if result.passed else EXIT_VERIFY


_COMMANDS = {
    "group": _cmd_group,
    "atoms": _cmd_atoms,
    "min-delta": _cmd_min_delta,
    "lengths": _cmd_lengths,
    "rho": _cmd_rho,
    "delta-star": _cmd_delta_star,
    "davenport": _cmd_davenport,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_DOMAIN
    try:
        return _COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PmzsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
