"""Command-line front end: ``symprank <command> ...``.

Every command prints a human-readable summary, or a single JSON document
with ``--json``.  Big integers are always emitted as decimal strings.  The
exit status is 0 exactly when every check in the report passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .formulas import build_A, build_A_prime, rank_closed_form, rank_odd_model
from .geometry import SympSpace, polar_space_count
from .htypes import BigMat, charpoly
from .linalg import BitMatrix, rank_gf2_stream, read_sms, write_sms
from .sbf import Check, verify_basis_theorem
from .wedge import dim_S

# |I_r| * |P| above this many bits needs --force
BIT_GUARD = 1 << 32


@dataclass
class VerificationReport:
    command: str
    m: int
    r: int | None
    t: int
    rank_formula: str | None = None
    rank_bruteforce: str | None = None
    sbf_count: str | None = None
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def q(self) -> int:
        return 2 ** self.t

    @property
    def match(self) -> bool | None:
        if self.rank_formula is None or self.rank_bruteforce is None:
            return None
        return self.rank_formula == self.rank_bruteforce

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "m": self.m,
            "r": self.r,
            "q": self.q,
            "t": self.t,
            "rank_formula": self.rank_formula,
            "rank_bruteforce": self.rank_bruteforce,
            "sbf_count": self.sbf_count,
            "match": self.match,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }
        out.update(self.extra)
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


class _Timer:
    def __init__(self, report: VerificationReport, phase: str):
        self.report, self.phase = report, phase

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.phase] = time.perf_counter() - self.t0


def _matrix_str(A: BigMat) -> list[list[str]]:
    return [[str(x) for x in row] for row in A]


def _format_matrix(A: BigMat) -> str:
    cells = _matrix_str(A)
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("  [" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _emit(report: VerificationReport, args, out=None) -> int:
    out = out or sys.stdout
    if args.json:
        json.dump(report.to_dict(args.timings), out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"{report.command}: m={report.m} r={report.r} t={report.t} q={report.q}\n")
        for key in ("rank_formula", "rank_bruteforce", "sbf_count"):
            val = getattr(report, key)
            if val is not None:
                out.write(f"  {key}: {val}\n")
        for key, val in report.extra.items():
            if isinstance(val, list) and val and isinstance(val[0], list):
                out.write(f"  {key}:\n")
                width = max(len(c) for row in val for c in row)
                for row in val:
                    out.write("    [" + " ".join(c.rjust(width) for c in row) + "]\n")
            else:
                out.write(f"  {key}: {val}\n")
        if report.match is not None:
            out.write(f"  match: {report.match}\n")
        for c in report.checks:
            status = "PASS" if c.passed else "FAIL"
            tail = f"  ({c.witness})" if c.witness else ""
            out.write(f"  [{status}] {c.name}{tail}\n")
        if args.timings:
            for phase, secs in report.timings.items():
                out.write(f"  time {phase}: {secs:.3f}s\n")
    return 0 if report.ok else 1


def _guard(m: int, r: int, t: int, force: bool) -> None:
    q = 2 ** t
    npts = (q ** (2 * m) - 1) // (q - 1)
    bits = polar_space_count(m, r, q) * npts
    if bits > BIT_GUARD and not force:
        raise SystemExit(
            f"B_{{{r},1}} for m={m}, q={q} has {bits} bits (> 2^32); rerun with --force"
        )


# ------------------------------------------------------------ commands

def cmd_formula(args) -> int:
    rep = VerificationReport("formula", args.m, args.r, args.t)
    with _Timer(rep, "formula"):
        rep.rank_formula = str(rank_closed_form(args.m, args.r, args.t))
    rep.extra["A"] = _matrix_str(build_A(args.m, args.r))
    return _emit(rep, args)


def cmd_bruteforce(args) -> int:
    m, r, t = args.m, args.r, args.t
    _guard(m, r, t, args.force)
    rep = VerificationReport("bruteforce", m, r, t)
    with _Timer(rep, "formula"):
        rep.rank_formula = str(rank_closed_form(m, r, t))
    space = SympSpace.over(m, t)
    ncols = len(space.points)
    if args.emit_matrix:
        with _Timer(rep, "enumerate"):
            mat = space.incidence_matrix(r)
        with open(args.emit_matrix, "w") as fh:
            write_sms(mat, fh)
        rows = mat.rows
    else:
        rows = space.incidence_rows(r)
    with _Timer(rep, "rank"):
        rank = rank_gf2_stream(
            rows, ncols, four_russians=args.four_russians, threads=args.threads
        )
    rep.rank_bruteforce = str(rank)
    rep.extra["nrows"] = polar_space_count(m, r, space.q)
    rep.extra["ncols"] = ncols
    rep.checks.append(Check(
        "bruteforce == formula", rep.match,
        "" if rep.match else f"{rep.rank_bruteforce} != {rep.rank_formula}",
    ))
    return _emit(rep, args)


def cmd_verify_sbf(args) -> int:
    rep = VerificationReport("verify-sbf", args.m, args.r, args.t)
    with _Timer(rep, "formula"):
        rep.rank_formula = str(rank_closed_form(args.m, args.r, args.t))
    with _Timer(rep, "verify"):
        try:
            res = verify_basis_theorem(args.m, args.r, args.t, force=args.force)
        except ValueError as exc:
            raise SystemExit(str(exc))
    rep.sbf_count = str(res.sbf_count)
    rep.rank_bruteforce = str(res.rank_incidence)
    rep.extra["rank_sbf"] = str(res.rank_sbf)
    rep.extra["rank_stacked"] = str(res.rank_stacked)
    rep.checks.extend(res.checks)
    rep.checks.append(Check(
        "count + 1 == formula", res.sbf_count + 1 == int(rep.rank_formula),
        "" if res.sbf_count + 1 == int(rep.rank_formula)
        else f"{res.sbf_count} + 1 != {rep.rank_formula}",
    ))
    return _emit(rep, args)


def cmd_dims(args) -> int:
    m = args.m
    table = {}
    for lam in range(2 * m + 1):
        table[str(lam)] = {
            str(ell): str(dim_S(m, lam, ell)) for ell in range(max(0, lam - m), lam // 2 + 1)
        }
    if args.json:
        json.dump({"m": m, "dims": table}, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        print(f"dim S^lam_l for m={m} (rows lam, columns l)")
        for lam, row in table.items():
            cells = " ".join(f"l={ell}:{d}" for ell, d in row.items())
            print(f"  lam={lam}: {cells}")
    return 0


def cmd_table(args) -> int:
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["m", "r", "t", "rank"])
        for m in range(2, args.m_max + 1):
            for r in range(1, 2 * m):
                for t in range(1, args.t_max + 1):
                    writer.writerow([m, r, t, str(rank_closed_form(m, r, t))])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_odd_compare(args) -> int:
    p, m, t = args.p, args.m, args.t
    rep = VerificationReport("odd-compare", m, m, t)
    A1 = build_A_prime(p, m)
    rep.extra["p"] = p
    rep.extra["A_prime"] = _matrix_str(A1)
    rep.extra["rank_odd_model"] = str(rank_odd_model(p, m, t))
    if p == 2:
        A = build_A(m, m)
        rep.rank_formula = str(rank_closed_form(m, m, t))
        rep.extra["A"] = _matrix_str(A)
        rep.extra["difference"] = str(int(rep.extra["rank_odd_model"]) - int(rep.rank_formula))
        rep.extra["differing_entries"] = [
            f"({i + 1},{j + 1}): {A[i][j]} vs {A1[i][j]}"
            for i in range(m) for j in range(m) if A[i][j] != A1[i][j]
        ]
        rep.extra["charpoly_A"] = [str(c) for c in charpoly(A)]
    return _emit(rep, args)


def cmd_export_matrix(args) -> int:
    _guard(args.m, args.r, args.t, args.force)
    mat = SympSpace.over(args.m, args.t).incidence_matrix(args.r)
    with open(args.out, "w") as fh:
        write_sms(mat, fh)
    print(f"wrote {mat.nrows}x{mat.ncols} incidence matrix to {args.out}")
    return 0


def cmd_sms_rank(args) -> int:
    with open(args.path) as fh:
        mat: BitMatrix = read_sms(fh)
    rank = rank_gf2_stream(mat.rows, mat.ncols, four_russians=args.four_russians, threads=args.threads)
    if args.json:
        print(json.dumps({"nrows": mat.nrows, "ncols": mat.ncols, "rank_gf2": str(rank)}))
    else:
        print(f"{mat.nrows}x{mat.ncols}: GF(2) rank {rank}")
    return 0


# ------------------------------------------------------------ parser

def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symprank", description="2-ranks of symplectic incidence matrices over GF(2^t)"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, r=True):
        p.add_argument("--m", type=_positive, required=True, help="half the dimension of V")
        if r:
            p.add_argument("--r", type=_positive, required=True, help="subspace dimension")
        p.add_argument("--t", type=_positive, required=True, help="q = 2^t")
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        p.add_argument("--timings", action="store_true", help="report wall time per phase")

    p = sub.add_parser("formula", help="closed-form rank and the matrix A")
    common(p)
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("bruteforce", help="enumerate B_{r,1} and compute its GF(2) rank")
    common(p)
    p.add_argument("--emit-matrix", metavar="PATH", help="also write B_{r,1} in SMS format")
    p.add_argument("--force", action="store_true", help="skip the size guard")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--four-russians", action="store_true", help="table-driven reduction")
    p.set_defaults(func=cmd_bruteforce)

    p = sub.add_parser("verify-sbf", help="check the admissible SBFs form a basis of C_r")
    common(p)
    p.add_argument("--force", action="store_true", help="skip the point-count guard")
    p.set_defaults(func=cmd_verify_sbf)

    p = sub.add_parser("dims", help="table of dim S^lam_l")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("table", help="CSV sweep of closed-form ranks")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--t-max", type=_positive, required=True)
    p.add_argument("--csv", "--out", dest="csv", metavar="PATH", help="output file (default stdout)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("odd-compare", help="compare with the odd-characteristic model")
    p.add_argument("--p", type=int, required=True, help="prime for the odd model")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_odd_compare)

    p = sub.add_parser("export-matrix", help="write B_{r,1} in SMS format")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_export_matrix)

    p = sub.add_parser("sms-rank", help="GF(2) rank of an SMS matrix file")
    p.add_argument("path")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--four-russians", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sms_rank)
    return parser


def _validate(args, parser: argparse.ArgumentParser) -> None:
    m = getattr(args, "m", None)
    r = getattr(args, "r", None)
    if args.command in ("formula", "bruteforce", "verify-sbf", "export-matrix", "odd-compare"):
        if m < 2:
            parser.error("--m must be at least 2")
    if r is not None and not 1 <= r <= 2 * m - 1:
        parser.error(f"--r must be in [1, {2 * m - 1}]")
    t = getattr(args, "t", None)
    if args.command in ("bruteforce", "verify-sbf", "export-matrix") and t > 16:
        parser.error("--t must be at most 16")
    if args.command == "odd-compare" and args.p < 2:
        parser.error("--p must be a prime")
    if args.command == "table" and args.m_max < 2:
        parser.error("--m-max must be at least 2")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
