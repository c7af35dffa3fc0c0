"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 computation precondition failure (non-dominant eigenvalue, real-root deficit).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import barycentric as bc
from . import complexes as cx
from . import rules as rl
from . import series as sr
from .convergence import convergence_records
from .errors import (
    DimensionExceeded,
    FormatError,
    FvsubError,
    NonDominantEigenvalue,
    RealRootDeficit,
    ValidationError,
)
from .exactalg import DEFAULT_TOL, as_fraction, frac_str, isolate_real_roots

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_PRECONDITION = 0, 1, 2, 3

MAX_DIM_ENV = "FVSUB_MAX_DIM"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def max_dim_guard() -> int:
    return int(os.environ.get(MAX_DIM_ENV, "16"))


def round5(x: Fraction) -> str:
    """Round to 5 decimals, halves away from zero, computed exactly."""
    x = Fraction(x)
    scaled = abs(x) * 10**5
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = "-" if x < 0 and q else ""
    return f"{sign}{q // 10**5}.{q % 10**5:05d}"


def _check_d(d: int, lo: int = 1) -> None:
    if not lo <= d <= max_dim_guard():
        raise _UsageError(f"d must lie in [{lo}, {max_dim_guard()}] (set {MAX_DIM_ENV} to raise the bound)")


class _UsageError(Exception):
    pass


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load_complex(source: str) -> cx.SimplicialComplex:
    """A complex file, or the name of a bundled corpus entry."""
    if Path(source).is_file():
        return cx.load_complex(Path(source))
    corpus = cx.bundled_corpus()
    if source in corpus:
        return corpus[source]
    raise _UsageError(f"no complex file or bundled complex named {source!r} (bundled: {', '.join(corpus)})")


def _load_rule(source: str, max_dim: int) -> rl.SubdivisionRule:
    if Path(source).is_file():
        return rl.parse_rule(Path(source))
    if source.startswith("stellar_top("):
        n = int(source[len("stellar_top("):-1])
        return rl.builtin_rule(source, n)
    if source in ("barycentric", "trivial"):
        return rl.builtin_rule(source, max_dim)
    raise _UsageError(f"unknown rule {source!r}: use barycentric, trivial, stellar_top(n) or a rule file")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_matrix(args) -> int:
    _check_d(args.d)
    if args.inverse:
        e = bc.eigendata(args.d)
        if args.json:
            _emit_json({"d": args.d, "P": e.P.to_strings(), "Pinv": e.Pinv.to_strings()})
        else:
            print(f"P_{args.d}:\n{e.P.pretty()}\n\nP_{args.d}^-1:\n{e.Pinv.pretty()}")
    else:
        m = bc.lambda_matrix(args.d)
        if args.json:
            _emit_json({"d": args.d, "Lambda": m.to_strings()})
        else:
            print(f"Lambda_{args.d}:\n{m.pretty()}")
    return EXIT_OK


def cmd_limit(args) -> int:
    _check_d(args.d, lo=2 if args.roots else 1)
    lim = bc.limit_polys(args.d)
    roots = None
    if args.roots:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RealRootDeficit)
            roots = bc.limit_roots(args.d, as_fraction(args.tol))
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    if args.csv:
        if roots is None:
            raise _UsageError("--csv needs --roots")
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["d", "kind", "root_lo", "root_hi", "approx"])
        w.writerows(roots.csv_rows())
        sys.stdout.write(out.getvalue())
    elif args.json:
        doc = lim.to_json()
        if roots is not None:
            doc["roots_p"] = [round5(r) for r in roots.roots_p]
            doc["roots_q"] = [round5(r) for r in roots.roots_q]
        _emit_json(doc)
    else:
        print(f"p_{args.d}(t) = {lim.p}")
        print(f"q_{args.d}(t) = {lim.q}")
        if roots is not None:
            print("roots of p: " + "  ".join(round5(r) for r in roots.roots_p))
            print("roots of q: " + "  ".join(round5(r) for r in roots.roots_q))
    if roots is not None and roots.deficit:
        return EXIT_PRECONDITION
    return EXIT_OK


def _explicit_step(rule_name: str, rule, X):
    if rule_name == "barycentric":
        return cx.barycentric_subdivide(X)
    return rl.apply_rule(rule, X)


def cmd_subdivide(args) -> int:
    X = _load_complex(args.complex)
    f = cx.f_vector(X)
    if f.d - 1 > max_dim_guard():
        raise DimensionExceeded(f"complex dimension {f.d - 1} exceeds the guard")
    rule = None if args.rule == "barycentric" else _load_rule(args.rule, max(f.d - 1, 0))
    traj = [f]
    cur = X
    for _ in range(args.iterations):
        if rule is None:
            nxt = bc.subdivided_fvector(traj[-1], 1)
        else:
            nxt = rl.subdivided_fvector_rule(rule, traj[-1], 1)
        if args.explicit:
            cur = _explicit_step(args.rule, rule, cur)
            seen = cx.f_vector(cur)
            if seen != nxt:
                print(f"error: explicit subdivision gives {list(seen)}, matrix gives {list(nxt)}", file=sys.stderr)
                return EXIT_VERIFY
        traj.append(nxt)
    if args.json:
        _emit_json([list(v) for v in traj])
    else:
        for n, v in enumerate(traj):
            print(f"{n}: {list(v)}")
    return EXIT_OK


def cmd_converge(args) -> int:
    X = _load_complex(args.complex)
    f = cx.f_vector(X)
    if f.d < 2:
        raise _UsageError("convergence needs a complex of dimension at least 1")
    if args.iterations < 1:
        raise _UsageError("--iterations must be at least 1")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RealRootDeficit)
        recs = convergence_records(f, args.iterations, as_fraction(args.tol))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "kind", "index", "root", "limit", "distance"])
    for r in recs:
        for i, (root, lim, dist) in enumerate(zip(r.roots, r.limits, r.distances)):
            w.writerow([r.n, "tracked", i, f"{float(root):.12g}", f"{float(lim):.12g}", f"{float(dist):.6e}"])
        if r.divergent_root is not None:
            w.writerow([r.n, "divergent", "", f"{float(r.divergent_root):.12g}", "", ""])
    sys.stdout.write(out.getvalue())
    return EXIT_PRECONDITION if any(r.deficit for r in recs) else EXIT_OK


# ---- verification suites ----------------------------------------------------

def _check(name: str, ok: bool, detail=None) -> dict:
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if detail is not None:
        entry["detail"] = detail
    return entry


def _symmetry_one(d: int) -> dict:
    ok, diff = bc.check_symmetry(d)
    return _check(f"symmetry d={d}", ok, None if ok else str(diff))


def suite_symmetry(max_d: int, jobs: int = 1) -> list[dict]:
    return _map(_symmetry_one, range(2, max_d + 1), jobs)


def suite_identity(max_k: int, max_d: int) -> list[dict]:
    out = []
    ok, k = sr.verify_B_identity(max_k)
    out.append(_check(f"B(e^(tx)) identity to order {max_k}", ok, None if ok else f"first mismatch k={k}"))
    ok, k = sr.verify_iota_b_commutation(max_k)
    out.append(_check(f"iota b iota = b to degree {max_k}", ok, None if ok else f"first mismatch k={k}"))
    for d in range(2, max_d + 1):
        q = bc.limit_polys(d).q
        out.append(_check(f"b(q_{d}) = {d}! q_{d}", sr.b_poly(q) == q * math.factorial(d)))
    return out


def _oracle_one(item) -> dict:
    name, X = item
    f = cx.f_vector(X)
    Y = X
    for n in (1, 2):
        Y = cx.barycentric_subdivide(Y)
        want = bc.subdivided_fvector(f, n)
        got = cx.f_vector(Y)
        if got != want:
            return _check(f"oracle {name}", False, f"n={n}: explicit {list(got)} vs matrix {list(want)}")
    return _check(f"oracle {name}", True)


def oracle_complexes(n_random: int = 20, seed: int = 0) -> list[tuple[str, cx.SimplicialComplex]]:
    items = list(cx.bundled_corpus().items())
    rng = random.Random(seed)
    items += [(f"random[{seed}:{i}]", cx.random_complex(rng)) for i in range(n_random)]
    return items


def suite_oracle(jobs: int = 1, n_random: int = 20, seed: int = 0) -> list[dict]:
    out = _map(_oracle_one, oracle_complexes(n_random, seed), jobs)
    bad = [
        (i, j)
        for i in range(-1, 7)
        for j in range(-1, i + 1)
        if cx.interior_face_count(i, j) != bc.lambda_entry(i, j)
    ]
    out.append(_check("interior_face_count = lambda_entry for -1 <= j <= i <= 6", not bad, bad or None))
    return out


def suite_rules() -> list[dict]:
    out = []
    bary = rl.builtin_rule("barycentric", 4)
    out.append(_check("builtin barycentric validates", not rl.validate_rule(bary)))
    out.append(_check("transition_matrix(barycentric, 5) = Lambda_5",
                      rl.transition_matrix(bary, 5).matrix == bc.lambda_matrix(5)))
    for n in (2, 3):
        r = rl.builtin_rule(f"stellar_top({n})", n)
        out.append(_check(f"stellar_top({n}) validates", not rl.validate_rule(r)))
        ok, diff = rl.check_rule_symmetry(r, n + 1)
        out.append(_check(f"stellar_top({n}) limit symmetry at d={n + 1}", ok, None if ok else str(diff)))
        for k in range(n + 1):
            out.append(_check(f"stellar_top({n}) iota commutation k={k}", rl.verify_iota_commutation_rule(r, k)[0]))
    for k in range(4):
        out.append(_check(f"barycentric iota commutation k={k}", rl.verify_iota_commutation_rule(bary, k)[0]))
    try:
        rl.limit_poly_rule(rl.builtin_rule("trivial", 3), 3)
        out.append(_check("trivial rule has no dominant eigenvalue", False, "no error raised"))
    except NonDominantEigenvalue:
        out.append(_check("trivial rule has no dominant eigenvalue", True))
    return out


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def cmd_verify(args) -> int:
    suites = ["symmetry", "identity", "oracle", "rules"] if args.suite == "all" else [args.suite]
    report = {"suites": {}}
    for s in suites:
        if s == "symmetry":
            checks = suite_symmetry(args.max_d, args.jobs)
        elif s == "identity":
            checks = suite_identity(args.max_k, args.max_d)
        elif s == "oracle":
            checks = suite_oracle(args.jobs, args.random, args.seed)
        else:
            checks = suite_rules()
        report["suites"][s] = {
            "passed": sum(c["status"] == "pass" for c in checks),
            "failed": sum(c["status"] == "fail" for c in checks),
            "checks": checks,
        }
    report["ok"] = all(v["failed"] == 0 for v in report["suites"].values())
    _emit_json(report)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


# ---- rule subcommands --------------------------------------------------------

def cmd_rule_validate(args) -> int:
    try:
        if Path(args.rule).is_file():
            rule = rl.parse_rule(Path(args.rule), validate=False)
        else:
            rule = _load_rule(args.rule, args.max_dim)
    except ValidationError as exc:
        findings = [str(f) for f in exc.findings]
        _emit_json({"valid": False, "findings": findings})
        return EXIT_VERIFY
    findings = [str(f) for f in rl.validate_rule(rule)]
    _emit_json({"name": rule.name, "max_dim": rule.max_dim, "valid": not findings,
                "nontrivial_dimension": rule.nontrivial_dimension, "findings": findings})
    return EXIT_OK if not findings else EXIT_VERIFY


def cmd_rule_matrix(args) -> int:
    rule = _load_rule(args.rule, max(args.n - 1, 0))
    tm = rl.transition_matrix(rule, args.n)
    if args.json:
        _emit_json({"rule": tm.rule_name, "n": tm.n, "matrix": tm.matrix.to_strings()})
    else:
        print(f"{tm.rule_name}, n={tm.n}:\n{tm.matrix.pretty()}")
    return EXIT_OK


def cmd_rule_limit(args) -> int:
    rule = _load_rule(args.rule, max(args.d - 1, 0))
    p, q, lam = rl.limit_poly_rule(rule, args.d)
    sym, _ = rl.check_rule_symmetry(rule, args.d)
    doc = {"rule": rule.name, "d": args.d, "eigenvalue": frac_str(lam),
           "p": [frac_str(c) for c in p.coeffs], "q": [frac_str(c) for c in q.coeffs], "symmetric": sym}
    code = EXIT_OK
    if args.roots:
        rep = isolate_real_roots(q, as_fraction(args.tol))
        doc["roots_q"] = [round5(r) for r in rep.exact]
        if sum(rep.multiplicities) < q.degree:
            print(f"warning: q has {sum(rep.multiplicities)} real roots of {q.degree}", file=sys.stderr)
            code = EXIT_PRECONDITION
    if args.json:
        _emit_json(doc)
    else:
        print(f"eigenvalue {doc['eigenvalue']}")
        print(f"p(t) = {p}\nq(t) = {q}\nsymmetric: {sym}")
        if args.roots:
            print("roots of q: " + "  ".join(doc["roots_q"]))
    return code


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fvsub", description="Face vectors of subdivided simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("matrix", help="print Lambda_d, or P_d and its inverse")
    m.add_argument("d", type=int)
    m.add_argument("--inverse", action="store_true")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_matrix)

    lim = sub.add_parser("limit", help="limit polynomials p_d, q_d and their roots")
    lim.add_argument("d", type=int)
    lim.add_argument("--roots", action="store_true")
    lim.add_argument("--tol", default=str(DEFAULT_TOL))
    fmt = lim.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    lim.set_defaults(func=cmd_limit)

    s = sub.add_parser("subdivide", help="f-vectors of iterated subdivisions")
    s.add_argument("complex")
    s.add_argument("--rule", default="barycentric")
    s.add_argument("--iterations", "-n", type=int, default=1)
    s.add_argument("--explicit", action="store_true", help="also subdivide combinatorially and compare")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_subdivide)

    c = sub.add_parser("converge", help="distances of subdivided roots to the limit roots (CSV)")
    c.add_argument("complex")
    c.add_argument("--iterations", "-n", type=int, default=10)
    c.add_argument("--tol", default=str(DEFAULT_TOL))
    c.set_defaults(func=cmd_converge)

    v = sub.add_parser("verify", help="run verification suites, JSON report")
    v.add_argument("--suite", choices=["symmetry", "identity", "oracle", "rules", "all"], default="all")
    v.add_argument("--max-d", type=int, default=10)
    v.add_argument("--max-k", type=int, default=sr.DEFAULT_ORDER)
    v.add_argument("--random", type=int, default=20, help="random complexes in the oracle suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rule", help="general subdivision rules")
    rsub = r.add_subparsers(dest="rule_command", required=True, parser_class=_Parser)
    rv = rsub.add_parser("validate")
    rv.add_argument("rule")
    rv.add_argument("--max-dim", type=int, default=3)
    rv.set_defaults(func=cmd_rule_validate)
    rm = rsub.add_parser("matrix")
    rm.add_argument("rule")
    rm.add_argument("n", type=int)
    rm.add_argument("--json", action="store_true")
    rm.set_defaults(func=cmd_rule_matrix)
    rli = rsub.add_parser("limit")
    rli.add_argument("rule")
    rli.add_argument("d", type=int)
    rli.add_argument("--roots", action="store_true")
    rli.add_argument("--tol", default=str(DEFAULT_TOL))
    rli.add_argument("--json", action="store_true")
    rli.set_defaults(func=cmd_rule_limit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"fvsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, ValidationError, FileNotFoundError) as exc:
        print(f"fvsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonDominantEigenvalue, DimensionExceeded, FvsubError) as exc:
        print(f"fvsub: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
