"""Command-line interface: verification suites with machine-readable reports.

Subcommands
-----------
check      run the operator-identity suite (Yang-Baxter equation, sigma
           identities, bracket recursions, the inversion-number formula,
           eigenspace decompositions, randomized wall/commutativity trials)
kernel     kernel dimension table (elimination and recurrence), chosen
           complement dimensions, generating-function identity, per-degree
           decomposition reports
homology   per-degree homology of a coefficient module (finite, from a JSON
           file, or the free module truncated by total degree), with the
           closed Betti formula cross-checked against direct ranks
decompose  a single-degree eigenspace decomposition report
koszul     the comparison squares against the exterior-algebra resolution

Exit status: 0 when every check passes, 1 when a check is falsified (the
first failing check is named on stderr), 2 for usage or input errors.
JSON output is the source of truth; reports are byte-deterministic for a
fixed configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .homology import (
    BoundaryRanks,
    betti_formula,
    betti_ranks,
    betti_ranks_stacked,
    boundary_squares_to_zero,
    homology_dims,
    koszul_check,
    load_module_spec,
    pairwise_commute,
    validate_module,
    verify_complex_splitting,
    wall_commutativity_trials,
)
from .kernel import (
    KernelTower,
    check_graded_algebra,
    check_kernel_vanishing,
    count_identity_holds,
    hilbert_check,
    kernel_dim_recurrence,
    m2_recurrences_hold,
    verify_decomposition,
    verify_generator_examples,
    _dim_table,
)
from .tensor import RankPolicy
from .ybop import (
    YangBaxter,
    check_bracket_recursions,
    check_phi_formula,
    check_sigma_identities,
    check_ybe,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# subcommand drivers: each returns (payload, ordered check pairs)


def run_check(m: int, n_max: int, policy: RankPolicy, seed: int):
    yb = YangBaxter(m)
    tower = KernelTower(yb, policy)
    checks = [("ybe", check_ybe(yb.R))]
    for n in range(2, n_max + 1):
        checks.append((f"sigma_identities_n{n}", check_sigma_identities(yb, n)))
        checks.append((f"bracket_recursions_n{n}", check_bracket_recursions(yb, n)))
        checks.append((f"phi_formula_n{n}", check_phi_formula(yb, n)))
    for n in range(1, n_max + 1):
        report = verify_decomposition(yb, n, tower, policy)
        checks.append((f"decomposition_n{n}", report.passed))
    agree, outcomes = wall_commutativity_trials(yb, seed=seed)
    checks.append(("wall_equals_commutativity", agree))
    payload = {
        "command": "check",
        "m": m,
        "n_max": n_max,
        "seed": seed,
        "checks": {name: ok for name, ok in checks},
        "wall_trials": [
            {"commute": c, "wall": w} for c, w in outcomes
        ],
    }
    return payload, checks


def run_kernel(m: int, n_max: int, policy: RankPolicy):
    yb = YangBaxter(m)
    tower = KernelTower(yb, policy)
    degrees = []
    checks = []
    direct_dims = []
    for n in range(0, n_max + 1):
        direct = tower.dim(n)
        direct_dims.append(direct)
        recurrence = kernel_dim_recurrence(m, n)
        tilde_dim = tower.tilde(n).dim if n >= 1 else None
        row_checks = {
            "recurrence_match": direct == recurrence,
            "count_identity": count_identity_holds(tower, n),
        }
        if n > m + 1:
            row_checks["vanishing"] = check_kernel_vanishing(tower, n)
        decomposition = None
        if n >= 1:
            report = verify_decomposition(yb, n, tower, policy)
            row_checks["decomposition"] = report.passed
            decomposition = [p.to_json() for p in report.parts]
        degrees.append(
            {
                "n": n,
                "M": direct,
                "M_recurrence": recurrence,
                "tilde_dim": tilde_dim,
                "decomposition": decomposition,
                "checks": row_checks,
            }
        )
        for name, ok in row_checks.items():
            checks.append((f"{name}_n{n}", ok))

    hilbert_ok = hilbert_check(m, max(n_max, 8))
    checks.append(("hilbert_identity", hilbert_ok))
    graded_ok = all(
        check_graded_algebra(tower, s, t)
        for s in range(2, n_max + 1)
        for t in range(s, n_max + 1 - s)
    )
    checks.append(("graded_algebra", graded_ok))
    extras = {"hilbert_identity": hilbert_ok, "graded_algebra": graded_ok}
    if m == 2:
        ok = m2_recurrences_hold(direct_dims)
        checks.append(("m2_recurrences", ok))
        extras["m2_recurrences"] = ok
    if m in (2, 3) and n_max >= 2:
        bound = min(n_max, 5 if m == 2 else 4)
        ok = verify_generator_examples(yb, tower, max_degree=bound)
        checks.append(("generators", ok))
        extras["generators"] = ok
    payload = {
        "command": "kernel",
        "m": m,
        "n_max": n_max,
        "degrees": degrees,
        "checks": extras,
    }
    return payload, checks


def run_homology(spec, n_max: int, policy: RankPolicy):
    yb = YangBaxter(spec.m)
    tower = KernelTower(yb, policy)
    ranks = BoundaryRanks(spec, yb, policy)
    report = homology_dims(spec, yb, n_max, policy, ranks)
    checks = []

    square_bound = min(n_max, 3)
    if spec.kind == "finite":
        squares = all(
            boundary_squares_to_zero(spec, yb, n) for n in range(1, square_bound + 1)
        )
    else:
        squares = all(
            boundary_squares_to_zero(spec, yb, n, total)
            for total in range(1, spec.max_total_degree + 1)
            for n in range(1, min(square_bound, total) + 1)
        )
    checks.append(("boundary_squares_to_zero", squares))

    for n in range(1, square_bound + 1):
        checks.append(
            (f"splitting_n{n}", verify_complex_splitting(spec, yb, n, tower, policy, ranks))
        )
    checks.append(("koszul_squares", koszul_check(spec, yb, policy)))

    if spec.kind == "finite":
        r = betti_ranks(spec, yb, policy)
        stacked = betti_ranks_stacked(spec, policy)
        stacked_ok = all(stacked[k] == r[k - 1] for k in stacked)
        checks.append(("betti_stacked_presentations", stacked_ok))
        formula = [betti_formula(spec, yb, n, r, policy) for n in range(n_max + 1)]
        direct = [rec["dim_H"] for rec in report.records]
        matches = formula == direct
        checks.append(("betti_formula_matches_direct", matches))
        for rec, value in zip(report.records, formula):
            rec["betti_formula"] = value
        report.betti = {
            "r": r,
            "stacked": stacked,
            "stacked_ok": stacked_ok,
            "formula": formula,
            "matches_direct": matches,
        }
    else:
        dims = _dim_table(spec.m, n_max)
        profile_ok = all(
            rec["dim_H"] == (dims[rec["n"]] if rec["module_degree"] == 0 else 0)
            for rec in report.records
        )
        checks.append(("free_homology_profile", profile_ok))

    report.checks = {name: ok for name, ok in checks}
    payload = {"command": "homology", "n_max": n_max, "module": spec.to_json()}
    payload.update(report.to_json())
    return payload, checks


def run_decompose(m: int, n: int, policy: RankPolicy):
    yb = YangBaxter(m)
    report = verify_decomposition(yb, n, policy=policy)
    payload = {"command": "decompose", "m": m, **report.to_json()}
    return payload, [(f"decomposition_n{n}", report.passed)]


def run_koszul(spec, policy: RankPolicy):
    yb = YangBaxter(spec.m)
    ok = koszul_check(spec, yb, policy)
    payload = {
        "command": "koszul",
        "module": spec.to_json(),
        "checks": {"koszul_squares": ok},
    }
    return payload, [("koszul_squares", ok)]


# ---------------------------------------------------------------------------
# output


def _csv_rows(payload):
    command = payload["command"]
    if command == "kernel":
        header = ["n", "M", "M_recurrence", "tilde_dim", "all_checks_pass"]
        rows = [
            [
                d["n"],
                d["M"],
                d["M_recurrence"],
                "" if d["tilde_dim"] is None else d["tilde_dim"],
                all(d["checks"].values()),
            ]
            for d in payload["degrees"]
        ]
        return header, rows
    if command == "homology":
        free = payload["kind"] == "free"
        header = ["n"] + (["module_degree", "total_degree"] if free else []) + [
            "dim_C",
            "rank_out",
            "rank_in",
            "dim_H",
        ]
        if not free and payload.get("betti"):
            header.append("betti_formula")
        rows = []
        for rec in payload["records"]:
            row = [rec[k] for k in header if k in rec]
            rows.append(row)
        return header, rows
    if command == "decompose":
        header = ["k", "dim", "eigenvalue", "eigen_ok"]
        return header, [
            [p["k"], p["dim"], p["eigenvalue"], p["eigen_ok"]]
            for p in payload["parts"]
        ]
    header = ["check", "passed"]
    return header, [[k, v] for k, v in sorted(payload["checks"].items())]


def _pretty_lines(payload):
    command = payload["command"]
    lines = [f"{command} report"]
    for key in ("m", "l", "n_max", "truncation", "seed"):
        if key in payload and payload[key] is not None:
            lines.append(f"  {key} = {payload[key]}")
    header, rows = _csv_rows(payload)
    if rows:
        widths = [
            max(len(str(h)), *(len(str(r[i])) for r in rows))
            for i, h in enumerate(header)
        ]
        lines.append("  " + "  ".join(str(h).ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            lines.append(
                "  " + "  ".join(str(v).ljust(w) for v, w in zip(row, widths))
            )
    if command == "homology" and payload.get("betti"):
        lines.append(f"  betti ranks r = {payload['betti']['r']}")
    checks = payload.get("checks", {})
    if checks and command in ("kernel", "homology", "decompose"):
        lines.append("  checks:")
        for name in sorted(checks):
            lines.append(f"    {'PASS' if checks[name] else 'FAIL'}  {name}")
    return lines


def emit(payload, output: str) -> str:
    if output == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    if output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, rows = _csv_rows(payload)
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return "\n".join(_pretty_lines(payload))


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybhomology",
        description="exact verification of one-term Yang-Baxter homology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_max_default=4):
        p.add_argument("--m", type=int, default=2, help="alphabet size")
        p.add_argument("--n-max", type=int, default=n_max_default, help="degree bound")
        p.add_argument(
            "--output", choices=("json", "csv", "pretty"), default="pretty"
        )
        p.add_argument(
            "--rank-mode",
            choices=("exact", "eval", "both"),
            default="eval",
            help="rank backend: exact elimination, evaluation, or cross-checked",
        )
        p.add_argument("--seed", type=int, default=0, help="seed for randomized trials")

    common(sub.add_parser("check", help="operator identity suite"))
    common(sub.add_parser("kernel", help="kernel dimensions and complements"))

    hom = sub.add_parser("homology", help="homology of a coefficient module")
    common(hom)
    hom.add_argument("--module", help="path to a module JSON file")
    hom.add_argument("--free", action="store_true", help="use the free module")
    hom.add_argument(
        "--truncation", type=int, default=6, help="total-degree bound (free module)"
    )

    dec = sub.add_parser("decompose", help="single-degree eigenspace decomposition")
    common(dec)
    dec.add_argument("--n", type=int, required=True, help="tensor degree")

    kos = sub.add_parser("koszul", help="exterior-algebra comparison squares")
    common(kos)
    kos.add_argument("--module", help="path to a module JSON file")
    kos.add_argument("--free", action="store_true", help="use the free module")
    kos.add_argument(
        "--truncation", type=int, default=6, help="total-degree bound (free module)"
    )
    return parser


def _load_spec(args):
    if getattr(args, "free", False):
        from .homology import FreeModule

        return FreeModule(args.m, args.truncation)
    if not getattr(args, "module", None):
        raise UsageError("pass --module <path> or --free")
    try:
        with open(args.module) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read module file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"invalid module JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )
    try:
        return load_module_spec(data)
    except ValueError as exc:
        raise UsageError(f"invalid module description: {exc}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    policy = RankPolicy(args.rank_mode)
    try:
        if args.command == "check":
            if args.n_max < 0 or args.m < 1:
                raise UsageError("need m >= 1 and n-max >= 0")
            payload, checks = run_check(args.m, args.n_max, policy, args.seed)
        elif args.command == "kernel":
            if args.n_max < 0 or args.m < 1:
                raise UsageError("need m >= 1 and n-max >= 0")
            payload, checks = run_kernel(args.m, args.n_max, policy)
        elif args.command == "homology":
            spec = _load_spec(args)
            if not validate_module(spec, YangBaxter(spec.m)):
                pair = pairwise_commute(spec)
                print(
                    f"wall condition fails: actions {pair[0]} and {pair[1]} do not commute",
                    file=sys.stderr,
                )
                return 1
            payload, checks = run_homology(spec, args.n_max, policy)
        elif args.command == "decompose":
            if args.n < 1:
                raise UsageError("need n >= 1")
            payload, checks = run_decompose(args.m, args.n, policy)
        else:
            spec = _load_spec(args)
            if not validate_module(spec, YangBaxter(spec.m)):
                pair = pairwise_commute(spec)
                print(
                    f"wall condition fails: actions {pair[0]} and {pair[1]} do not commute",
                    file=sys.stderr,
                )
                return 1
            payload, checks = run_koszul(spec, policy)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(emit(payload, args.output))
    for name, ok in checks:
        if not ok:
            print(f"FAILED: {name}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
