"""Command-line front end.

Subcommands: generate (write phase data), verify (exhaustive correlation
checks), bounds (lower bounds and the optimality factor), tables (built-in
parameter sweeps), profile (per-pair correlation magnitudes as CSV).

Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O
failure. The QCSS_THREADS environment variable caps scan parallelism.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import correlation
from .bounds import (
    format_rho,
    liu_bound,
    optimality_factor,
    table_rows,
    welch_bound,
    QcssParams,
)
from .codebook import PhaseMatrix, SequenceFamily, build_ccc, build_qcss, build_set
from .errors import PreconditionViolatedError, QcssError
from .modarith import Factorization, default_exponent, factorize, pi_perm, verify_unique_solution

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_IO = 3

SCHEMA = "qcss/1"

_CSV_HEADER = re.compile(r"#\s*N=(\d+),\s*k=(\d+),\s*m=(\d+),\s*e=(\d+)")


class _ArgError(QcssError):
    """Command-line usage error outside argparse's own checks."""


# ---------------------------------------------------------------------------
# serialization


def matrix_to_csv_text(mat: PhaseMatrix, exponent: int) -> str:
    """Row-major integer CSV with a one-line metadata header."""
    lines = [f"# N={mat.n}, k={mat.k}, m={mat.m}, e={exponent}"]
    lines += [",".join(str(x) for x in row) for row in mat.phases.tolist()]
    return "\n".join(lines) + "\n"


def matrix_from_csv_text(text: str) -> tuple[PhaseMatrix, int]:
    """Inverse of matrix_to_csv_text; returns the matrix and the exponent."""
    header = None
    rows: list[list[int]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _CSV_HEADER.match(line)
            if match:
                header = tuple(int(g) for g in match.groups())
            continue
        rows.append([int(x) for x in line.split(",")])
    if header is None:
        raise _ArgError("missing '# N=..., k=..., m=..., e=...' header line")
    n, k, m, e = header
    return PhaseMatrix(n, k, m, np.array(rows, dtype=np.int64)), e


def family_to_json_obj(members, n: int, exponent: int, kind: str) -> dict:
    """JSON bundle for a list of phase matrices; lossless round trip."""
    p0 = factorize(n).least_prime
    return {
        "schema": SCHEMA,
        "kind": kind,
        "n": n,
        "exponent": exponent,
        "p0": p0,
        "set_size": len(members),
        "flock_size": n,
        "length": n,
        "members": [
            {"u": u, "k": mat.k, "m": mat.m, "phases": mat.phases.tolist()}
            for u, mat in enumerate(members)
        ],
    }


def family_from_json_obj(obj: dict) -> tuple[list[PhaseMatrix], int, str]:
    """Inverse of family_to_json_obj: (members, exponent, kind)."""
    if obj.get("schema") != SCHEMA:
        raise _ArgError(f"unsupported schema {obj.get('schema')!r}, expected {SCHEMA!r}")
    n = obj["n"]
    members = [
        PhaseMatrix(n, rec["k"], rec["m"], np.array(rec["phases"], dtype=np.int64))
        for rec in obj["members"]
    ]
    return members, obj["exponent"], obj["kind"]


def load_family_json(path: str | Path) -> tuple[list[PhaseMatrix], int, str]:
    with open(path, "r", encoding="utf-8") as fh:
        return family_from_json_obj(json.load(fh))


def load_matrix_csv(path: str | Path) -> tuple[PhaseMatrix, int]:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_csv_text(fh.read())


# ---------------------------------------------------------------------------
# shared helpers


def _checked_modulus(n: int) -> Factorization:
    if n < 3 or n % 2 == 0:
        raise _ArgError("modulus must be odd and >= 3")
    return factorize(n)


def _make_perm(f: Factorization, exponent: int | None):
    e = default_exponent(f.largest_prime) if exponent is None else exponent
    return pi_perm(f, e), e


def _corrupt_member(family: SequenceFamily, k: int, m: int, s: int, t: int) -> SequenceFamily:
    """Test hook: add 1 (mod N) to a single phase entry of one member."""
    n = family.n
    members = []
    for mat in family.members:
        if mat.k == k and mat.m == m:
            phases = mat.phases.copy()
            phases[s, t] = (phases[s, t] + 1) % n
            mat = PhaseMatrix(n, mat.k, mat.m, phases)
        members.append(mat)
    return SequenceFamily(n, family.kind, tuple(members), k=family.k)


def _parse_corrupt(raw: str) -> tuple[int, int, int, int]:
    try:
        k, m, s, t = (int(x) for x in raw.split(","))
    except ValueError:
        raise _ArgError("--corrupt expects four comma-separated integers k,m,s,t") from None
    return k, m, s, t


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    f = _checked_modulus(args.n)
    perm, e = _make_perm(f, args.exponent)
    n, p0 = f.n, f.least_prime

    if args.m is not None and args.k is None:
        raise _ArgError("--m requires --k")
    if args.k is not None and args.m is not None:
        members = [build_set(args.k, args.m, perm)]
        kind = "set"
    elif args.k is not None:
        members = list(build_ccc(args.k, perm).members)
        kind = "ccc"
    else:
        members = list(build_qcss(f, perm).members)
        kind = "qcss"

    out = Path(args.out)
    if args.format == "json":
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(family_to_json_obj(members, n, e, kind), fh)
        written = [out]
    elif len(members) == 1:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(matrix_to_csv_text(members[0], e), encoding="utf-8")
        written = [out]
    else:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for mat in members:
            path = out / f"n{n}_k{mat.k}_m{mat.m}.csv"
            path.write_text(matrix_to_csv_text(mat, e), encoding="utf-8")
            written.append(path)

    print(f"K={len(members)} M={n} N={n} p0={p0} e={e}")
    print(f"wrote {len(written)} file(s) under {out}")
    return EXIT_OK


def _print_or_json(args, human_lines: list[str], payload: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in human_lines:
            print(line)


def _cmd_verify(args) -> int:
    f = _checked_modulus(args.n)
    perm, e = _make_perm(f, args.exponent)
    n, p0 = f.n, f.least_prime
    corrupt = _parse_corrupt(args.corrupt) if args.corrupt else None
    lines: list[str] = []
    payload: dict = {"n": n, "p0": p0, "exponent": e, "scope": args.scope}
    ok = True

    if args.scope == "permutation":
        report = verify_unique_solution(f, perm)
        ok = report.ok
        if ok:
            lines.append("unique-solution: ok (all tau,c)")
        else:
            first = report.violations[0]
            lines.append(
                f"unique-solution: FAILED ({len(report.violations)} violations; "
                f"first tau={first[0]} c={first[1]} count={first[2]})"
            )
        payload["ok"] = ok
        payload["violations"] = [list(v) for v in report.violations]

    elif args.scope == "ccc":
        payload["families"] = []
        for k in range(1, p0):
            family = build_ccc(k, perm)
            if corrupt and corrupt[0] == k:
                family = _corrupt_member(family, *corrupt)
            report = correlation.verify_ccc(family, tol=args.tol, workers=args.workers)
            ok = ok and report.ok
            m1, m2, tau = report.argmax
            status = "ok" if report.ok else "FAILED"
            lines.append(
                f"ccc k={k}: {status} max_deviation={report.max_deviation:.6g} "
                f"tol={report.tol:.6g} worst=(k={k}, m1={m1}, m2={m2}, tau={tau})"
            )
            payload["families"].append(
                {
                    "k": k,
                    "ok": report.ok,
                    "max_deviation": report.max_deviation,
                    "tol": report.tol,
                    "argmax": [m1, m2, tau],
                }
            )
        payload["ok"] = ok

    elif args.scope == "interset":
        if p0 < 3:
            raise _ArgError("inter-set checks need at least two families")
        payload["pairs"] = []
        for k1 in range(1, p0):
            for k2 in range(k1 + 1, p0):
                report = correlation.verify_interset(
                    build_ccc(k1, perm), build_ccc(k2, perm), tol=args.tol, workers=args.workers
                )
                pair_ok = report.ok and report.dichotomy_ok
                ok = ok and pair_ok
                status = "ok" if pair_ok else "FAILED"
                lines.append(
                    f"interset k1={k1} k2={k2}: {status} max={report.max_magnitude:.6f} "
                    f"dichotomy_deviation={report.dichotomy_deviation:.6g}"
                )
                payload["pairs"].append(
                    {
                        "k1": k1,
                        "k2": k2,
                        "ok": pair_ok,
                        "max_magnitude": report.max_magnitude,
                        "dichotomy_deviation": report.dichotomy_deviation,
                        "argmax": list(report.argmax),
                    }
                )
        payload["ok"] = ok

    else:  # qcss
        family = build_qcss(f, perm)
        if corrupt:
            family = _corrupt_member(family, *corrupt)
        tol = 1e-6 * n if args.tol is None else args.tol
        report = correlation.delta_max_scan(family, tol=tol, workers=args.workers)
        ok = abs(report.delta_max - n) <= tol
        u1, u2, tau = report.argmax
        status = "ok" if ok else "FAILED"
        lines.append(
            f"delta_max={report.delta_max:.6f} {status} "
            f"argmax=(u1={u1}, u2={u2}, tau={tau}) expected={n} tol={tol:.6g}"
        )
        payload.update(
            {
                "ok": ok,
                "delta_max": report.delta_max,
                "expected": n,
                "tol": tol,
                "argmax": [u1, u2, tau],
                "set_size": report.set_size,
            }
        )

    _print_or_json(args, lines, payload)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_bounds(args) -> int:
    K, M, N = args.k, args.m, args.n
    welch = welch_bound(K, M, N)
    try:
        liu = liu_bound(K, M, N)
    except PreconditionViolatedError:
        liu = None

    lines = [f"welch={welch:.6f}"]
    payload: dict = {"K": K, "M": M, "N": N, "welch": welch, "liu": liu}
    if liu is not None:
        lines.append(f"liu={liu:.6f}")
    if args.delta is not None:
        report = optimality_factor(QcssParams(K, M, N, args.delta))
        name = {"liu": "Liu", "welch": "Welch"}[report.bound_used]
        lines.append(f"rho={format_rho(report.rho)} ({name}) {report.classification}")
        payload.update(
            {
                "delta_max": args.delta,
                "rho": report.rho,
                "rho_4dp": format_rho(report.rho),
                "bound_used": report.bound_used,
                "classification": report.classification,
            }
        )
    _print_or_json(args, lines, payload)
    return EXIT_OK


def _cmd_tables(args) -> int:
    rows = table_rows(args.which)
    prime_square = args.which.lower() in ("v", "prime-square")
    # The prime-square sweep is conventionally printed (M, N, K, rho);
    # the other two (K, M, N, rho).
    if prime_square:
        header = ("alphabet", "M", "N", "K", "rho")
        cells = [(r.alphabet, r.flock_size, r.length, r.set_size, r.rho_4dp) for r in rows]
    else:
        header = ("alphabet", "K", "M", "N", "rho")
        cells = [(r.alphabet, r.set_size, r.flock_size, r.length, r.rho_4dp) for r in rows]

    if args.format == "json":
        out = [dict(zip(header, row)) for row in cells]
        text = json.dumps(out, indent=2)
    elif args.format == "csv":
        text = "\n".join([",".join(header)] + [",".join(str(c) for c in row) for row in cells])
    else:
        widths = [max(len(str(row[i])) for row in [header, *cells]) for i in range(len(header))]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        text = "\n".join(fmt.format(*map(str, row)).rstrip() for row in [header, *cells])

    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def _cmd_profile(args) -> int:
    f = _checked_modulus(args.n)
    perm, _ = _make_perm(f, args.exponent)
    a = build_set(args.k1, args.m1, perm)
    b = build_set(args.k2, args.m2, perm)
    profile = correlation.set_xcorr_profile(a, b)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("tau,magnitude\n")
        for tau, mag in zip(profile.shifts.tolist(), profile.magnitudes.tolist()):
            fh.write(f"{tau},{mag:.12g}\n")
    print(f"wrote {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcss",
        description="Build, verify and measure complementary code families over Z_N (odd N).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build phase matrices and write them out")
    g.add_argument("--n", type=int, required=True, help="modulus N (odd, >= 3)")
    g.add_argument("--exponent", type=int, default=None, help="power-map exponent e")
    g.add_argument("--k", type=int, default=None, help="family index; with --m selects one set")
    g.add_argument("--m", type=int, default=None, help="set index within the family")
    g.add_argument("--out", required=True, help="output file, or directory for csv family export")
    g.add_argument("--format", choices=["csv", "json"], default="csv")
    g.set_defaults(handler=_cmd_generate)

    v = sub.add_parser("verify", help="run exhaustive correlation checks")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--scope", choices=["permutation", "ccc", "interset", "qcss"], required=True)
    v.add_argument("--exponent", type=int, default=None)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--workers", type=int, default=None, help="scan threads (default: QCSS_THREADS or 1)")
    v.add_argument("--json", action="store_true", help="machine-readable report")
    v.add_argument(
        "--corrupt",
        default=None,
        metavar="K,M,S,T",
        help="testing aid: add 1 (mod N) to one phase entry before verifying",
    )
    v.set_defaults(handler=_cmd_verify)

    b = sub.add_parser("bounds", help="lower bounds and optimality factor for (K, M, N)")
    b.add_argument("--k", type=int, required=True, help="set size K")
    b.add_argument("--m", type=int, required=True, help="flock size M")
    b.add_argument("--n", type=int, required=True, help="sequence length N")
    b.add_argument("--delta", type=float, default=None, help="achieved delta_max")
    b.add_argument("--json", action="store_true")
    b.set_defaults(handler=_cmd_bounds)

    t = sub.add_parser("tables", help="print a built-in parameter sweep")
    t.add_argument(
        "which",
        choices=["iii", "iv", "v", "optimal", "near-optimal", "prime-square"],
    )
    t.add_argument("--format", choices=["text", "csv", "json"], default="text")
    t.add_argument("--out", default=None, help="write to a file instead of stdout")
    t.set_defaults(handler=_cmd_tables)

    p = sub.add_parser("profile", help="export |set correlation| over all shifts as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--exponent", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except QcssError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
