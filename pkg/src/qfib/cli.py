"""Command-line frontend: ``qfib <subcommand> [flags]``.

Exit codes: 0 success, 1 a verification or series check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import Sequence

from . import morse
from .families import FamilyId, family
from .operators import moment
from .qring import XsPoly, render, subst_scale, to_json_terms
from .qseries import GF_IDS, GF_TARGETS, gf
from .verify import REGISTRY, MUTANTS, run_all, run_identity

ORACLE_KINDS = {
    "count": "count",
    "w": "w_sum",
    "v": "v_sum",
    "W": "W_sum",
    "periodic": "periodic_w",
}
MOMENT_KINDS = {
    "f": FamilyId.f_xs,
    "l": FamilyId.l_xs,
    "fib": FamilyId.fib,
    "luc": FamilyId.luc,
}


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"expected an integer >= {lo}, got {value}")
        return value

    parse.__name__ = f"integer >= {lo}"
    return parse


_SUBST = re.compile(r"^([xs])=q\^?(-?\d+)?$")


def _subst(text: str) -> tuple[str, int]:
    """``s=q^j`` (or ``x=q^j``), meaning var -> q^j * var."""
    m = _SUBST.match(text.replace(" ", ""))
    if not m:
        raise argparse.ArgumentTypeError(f"expected VAR=q^J with VAR in {{x, s}} and integer J, got {text!r}")
    var, j = m.groups()
    return var, int(j) if j is not None else 1


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, separators=(", ", ": "))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfib", description="q-Fibonacci and q-Lucas polynomials, exactly.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    fam_ids = [f.value for f in FamilyId]

    c = sub.add_parser("family", help="one polynomial")
    c.add_argument("--id", required=True, choices=fam_ids)
    c.add_argument("--n", required=True, type=_int_at_least(0))
    c.add_argument("--mode", choices=("closed", "recursive"), default="closed")
    c.add_argument("--subst", type=_subst, action="append", default=[], metavar="VAR=q^J")
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("table", help="a family for n = 0..nmax")
    c.add_argument("--id", required=True, choices=fam_ids)
    c.add_argument("--nmax", required=True, type=_int_at_least(0))
    c.add_argument("--format", choices=("csv", "json", "text"), default="text")

    c = sub.add_parser("verify", help="run registered identities")
    which = c.add_mutually_exclusive_group(required=True)
    which.add_argument("--identity", choices=list(REGISTRY) + list(MUTANTS), metavar="ID")
    which.add_argument("--all", action="store_true")
    c.add_argument("--nmax", type=_int_at_least(1), default=20)
    c.add_argument("--mmax", type=_int_at_least(1), default=8)
    c.add_argument("--jobs", type=_int_at_least(1), default=1)
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("oracle", help="Morse-sequence sums")
    c.add_argument("--kind", required=True, choices=list(ORACLE_KINDS))
    c.add_argument("--nmax", required=True, type=_int_at_least(0))
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("series", help="generating-function coefficients")
    c.add_argument("--gf", required=True, choices=GF_IDS)
    c.add_argument("--order", required=True, type=_int_at_least(0))
    c.add_argument("--check", action="store_true", help="compare with the matching family")
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("moments", help="moments of a monic family")
    c.add_argument("--family", required=True, choices=list(MOMENT_KINDS))
    c.add_argument("--nmax", required=True, type=_int_at_least(0))
    c.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("fixtures", help="write Morse fixtures as JSON lines")
    c.add_argument("--n", required=True, type=_int_at_least(0))
    c.add_argument("--out", required=True)
    return p


def _rows(rows: list[tuple[int, XsPoly]], fmt: str, key: str = "n") -> str:
    if fmt == "json":
        return _dumps([{key: n, "polynomial": to_json_terms(p)} for n, p in rows])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([key, "polynomial"])
        for n, p in rows:
            w.writerow([n, render(p)])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{n}: {render(p)}" for n, p in rows)


def _family(args) -> tuple[int, str]:
    p = family(args.id, args.n, args.mode)
    for var, j in args.subst:
        p = subst_scale(p, var, j)
    return 0, _dumps(to_json_terms(p)) if args.format == "json" else render(p)


def _table(args) -> tuple[int, str]:
    return 0, _rows([(n, family(args.id, n)) for n in range(args.nmax + 1)], args.format)


def _verify(args) -> tuple[int, str]:
    if args.all:
        reports = run_all(args.nmax, args.mmax, jobs=args.jobs)
    else:
        reports = [run_identity(args.identity, args.nmax, args.mmax)]
    code = 0 if all(r.passed for r in reports) else 1
    if args.format == "json":
        return code, _dumps([r.to_record() for r in reports])
    lines = []
    for r in reports:
        span = ", ".join(f"{k}={a}..{b}" for k, (a, b) in r.ranges.items())
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name} [{r.equation}] {span} ({r.elapsed_ms:.1f} ms)"
        if r.counterexample:
            ce = r.counterexample
            line += f"\n    at {ce.indices}: {ce.lhs} != {ce.rhs}"
        lines.append(line)
    failed = sum(not r.passed for r in reports)
    lines.append(f"{len(reports) - failed}/{len(reports)} passed")
    return code, "\n".join(lines)


def _oracle(args) -> tuple[int, str]:
    kind = ORACLE_KINDS[args.kind]
    rows = [(n, morse.oracle(kind, n)) for n in range(args.nmax + 1)]
    return 0, _rows(rows, args.format)


def _series(args) -> tuple[int, str]:
    series = gf(args.gf, args.order)
    code, out = 0, []
    target, shift = GF_TARGETS[args.gf]
    for n in range(args.order + 1):
        c = series[n]
        row = {"n": n, "polynomial": c}
        if args.check:
            row["match"] = c == family(target, n + shift)
            code |= 0 if row["match"] else 1
        out.append(row)
    if args.format == "json":
        return code, _dumps(
            [{**r, "polynomial": to_json_terms(r["polynomial"])} for r in out]
        )
    lines = []
    for r in out:
        tail = "" if "match" not in r else ("  ok" if r["match"] else "  MISMATCH")
        lines.append(f"z^{r['n']}: {render(r['polynomial'])}{tail}")
    return code, "\n".join(lines)


def _moments(args) -> tuple[int, str]:
    fid = MOMENT_KINDS[args.family]
    return 0, _rows([(n, moment(fid, n)) for n in range(args.nmax + 1)], args.format)


def _fixtures(args) -> tuple[int, str]:
    count = morse.write_fixtures(args.n, args.out)
    return 0, f"wrote {count} sequences of length {args.n} to {args.out}"


HANDLERS = {
    "family": _family,
    "table": _table,
    "verify": _verify,
    "oracle": _oracle,
    "series": _series,
    "moments": _moments,
    "fixtures": _fixtures,
}


def dispatch(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; returns (exit code, stdout text).  Usage errors raise SystemExit(2)."""
    args = build_parser().parse_args(list(argv))
    return HANDLERS[args.command](args)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text = dispatch(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return exc.code if isinstance(exc.code, int) else 2
    except OSError as exc:
        print(f"qfib: {exc}", file=sys.stderr)
        return 2
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
