"""Command-line front end.

Exit codes: 0 success, 1 parse/usage error, 2 domain validation failure,
3 internal assertion failure.
"""
from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction

from . import appell_humbert as ah
from . import exact, io, jordan, lattice, pencil, theta
from .appell_humbert import AHData

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3
PAIRING_TABLE_MAX = 64


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> dict:
    return io.loads(_read(path))


# ---------------------------------------------------------------------------
# analyze


def analyze(d: AHData) -> dict:
    report = ah.validate(d)
    out: dict = {
        "schema": io.SCHEMA,
        "validation": {"ok": report.ok, "violations": report.violations, "warnings": report.warnings},
    }
    if not report.ok:
        return out
    S = d.symplectic()
    dim0, D = ah.k_group(d)
    out.update({
        "g": d.g,
        "mode": "period" if d.has_period else "gram",
        "pic0": ah.is_pic0(d),
        "g0": S.g0,
        "divisors": list(S.divisors),
        "k_group": {"dim_identity_component": dim0, "components": list(D.divisors),
                    "components_order": D.order},
        "jordan_constant": jordan.jordan_constant(d),
        "jordan_note": "closed form; finite models are checked by the heisenberg command",
    })
    if d.has_period:
        out["semipositive"] = ah.is_semipositive(d)
    if D.order <= PAIRING_TABLE_MAX:
        elems = list(D.elements())
        out["pairing"] = {
            "elements": [list(x) for x in elems],
            "table": [[io.rational_str(lattice.pairing_eE(D, x, y)) for y in elems] for x in elems],
        }
    return out


def _print_analysis(rep: dict):
    val = rep["validation"]
    print("validation:", "ok" if val["ok"] else "FAILED")
    for v in val["violations"]:
        print("  violation:", v)
    for w in val["warnings"]:
        print("  warning:", w)
    if not val["ok"]:
        return
    print(f"g = {rep['g']}  mode = {rep['mode']}  pic0 = {rep['pic0']}")
    print(f"radical rank 2*g0 = {2 * rep['g0']}")
    print("elementary divisors:", rep["divisors"] or "none")
    k = rep["k_group"]
    print(f"K(L): identity component of dimension {k['dim_identity_component']}, "
          f"component group of type {k['components'] or '(trivial)'} and order {k['components_order']}")
    print("Jordan constant of the theta group:", rep["jordan_constant"])
    if "semipositive" in rep:
        print("semipositive:", rep["semipositive"])


def cmd_analyze(args) -> int:
    doc = _load(args.path)
    if "data" not in doc:
        raise io.DocumentError("mode", "analyze needs line bundle data at the top level")
    rep = analyze(doc["data"])
    _emit(args, rep, _print_analysis)
    return EXIT_OK if rep["validation"]["ok"] else EXIT_DOMAIN


# ---------------------------------------------------------------------------
# pencil


def pencil_report(base: AHData, dominating: AHData, n_max: int, assume_semipositive: bool) -> dict:
    try:
        P = pencil.Pencil(base, dominating)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    f = pencil.det_polynomial(P)
    rows = pencil.growth_table(P, n_max)
    try:
        cert = pencil.non_jordan_certificate(base, dominating, n_max, assume_semipositive)
    except ValueError as exc:
        cert = {"error": str(exc)}
    return {
        "schema": io.SCHEMA,
        "g0": P.g0,
        "det_polynomial": list(f.coefficients),
        "degenerate": sorted(pencil.degenerate_set(f)),
        "growth": [pencil._row_doc(r) for r in rows],
        "unbounded": pencil.growth_summary(f, rows),
        "certificate": cert,
    }


def _print_pencil(rep: dict):
    f = pencil.DetPolynomial(tuple(rep["det_polynomial"]))
    print(f"f(T) = {f}   (degree {f.degree}, leading coefficient {f.leading})")
    print("degenerate parameters:", rep["degenerate"] or "none")
    print(f"{'n':>4} {'f(n)':>10} {'jordan':>8}  divisors")
    for r in rep["growth"]:
        if r.get("degenerate"):
            print(f"{r['n']:>4} {r['f']:>10} {'-':>8}  degenerate")
        else:
            print(f"{r['n']:>4} {r['f']:>10} {r['jordan']:>8}  {r['divisors']}")
    cert = rep["certificate"]
    if "error" in cert:
        print("certificate: not issued:", cert["error"])
        return
    print("certificate:")
    for h in cert["hypotheses"]:
        print(f"  {h['name']}: {h['status']}")
    u = cert["unbounded"]
    print(f"  Jordan constants of the tensor family {cert['family']}: "
          f"{[j for _, j in u['tail']]} (strictly increasing from n = {u['monotone_from']}: "
          f"{u['strictly_increasing_tail']})")
    print("  cited:", cert["cited"])


def cmd_pencil(args) -> int:
    doc = _load(args.path)
    if "base" not in doc:
        raise io.DocumentError("pencil", "missing pencil block with base and dominating data")
    rep = pencil_report(doc["base"], doc["dominating"], args.range, args.assume_semipositive)
    _emit(args, rep, _print_pencil)
    return EXIT_DOMAIN if "error" in rep["certificate"] else EXIT_OK


# ---------------------------------------------------------------------------
# heisenberg


def heisenberg_report(divisors, m, brute_force: bool, bound: int) -> dict:
    H = theta.heisenberg(divisors, m)
    out = {"type": list(H.divisors), "m": H.m, "order": H.order,
           "closed_form": math.prod(H.divisors)}
    if brute_force:
        if H.order > bound:
            raise ValueError(f"group order {H.order} exceeds --bound {bound}")
        G = jordan.FiniteGroupTable.from_elements(H.enumerate_elements(), H.element_mul, H.identity)
        rep = jordan.brute_force_jordan(G, bound)
        els = H.enumerate_elements()
        out["brute_force"] = {
            "constant": rep.constant,
            "subgroups": rep.subgroup_count,
            "witness_subgroup": [list(els[i]) for i in rep.witness_subgroup],
            "witness_abelian_normal": [list(els[i]) for i in rep.witness_abelian_normal],
        }
        out["verdict"] = "AGREE" if rep.constant == out["closed_form"] else "DISAGREE"
    return out


def _print_heisenberg(rep: dict):
    print(f"Heisenberg group of type {tuple(rep['type'])}, centre Z/{rep['m']}, order {rep['order']}")
    print("closed-form Jordan constant:", rep["closed_form"])
    if "brute_force" in rep:
        bf = rep["brute_force"]
        print(f"brute-force Jordan constant: {bf['constant']} over {bf['subgroups']} subgroups")
        print("  witness subgroup generators:", bf["witness_subgroup"])
        print("  abelian normal subgroup generators:", bf["witness_abelian_normal"])
        print(rep["verdict"])


def cmd_heisenberg(args) -> int:
    try:
        divisors = [int(x) for x in args.type.split(",") if x.strip()]
    except ValueError:
        raise io.DocumentError("--type", f"malformed divisor list {args.type!r}") from None
    rep = heisenberg_report(divisors, args.m, args.brute_force, args.bound)
    _emit(args, rep, _print_heisenberg)
    return EXIT_INTERNAL if rep.get("verdict") == "DISAGREE" else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _rand_lattice_vector(rng: random.Random, n: int) -> list[int]:
    return [rng.randint(-5, 5) for _ in range(n)]


def verify_data(d: AHData, pairs: int = 50, seed: int = 0) -> list[dict]:
    """Run the invariant checks on one line bundle; returns named pass/fail/skipped records."""
    rng = random.Random(seed)
    checks: list[dict] = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "status": "pass" if ok else "FAIL", "detail": detail})

    rep = ah.validate(d)
    for name, key in [("hermitian symmetry", "hermitian"), ("integrality of Im H", "integrality"),
                      ("period independence", "period"), ("gram/period consistency", "consistency")]:
        if key in ("period", "consistency") and not d.has_period:
            checks.append({"name": name, "status": "skipped", "detail": "gram mode"})
            continue
        bad = [v for v in rep.violations if v.startswith(key)]
        record(name, not bad, "; ".join(bad))
    if not rep.ok:
        for name in ("semicharacter cocycle", "alpha on radical is a homomorphism", "ker H = ker E",
                     "symplectic normal form", "commutator identity", "centre test",
                     "commutative when H = 0"):
            checks.append({"name": name, "status": "skipped", "detail": "invalid data"})
        return checks

    E = d.E()
    n = d.rank
    ok = True
    for _ in range(pairs):
        l1, l2 = _rand_lattice_vector(rng, n), _rand_lattice_vector(rng, n)
        lhs = ah.alpha_eval(d, [a + b for a, b in zip(l1, l2)])
        rhs = (Fraction(exact.bilinear(l1, E, l2), 2) + ah.alpha_eval(d, l1) + ah.alpha_eval(d, l2)) % 1
        ok = ok and lhs == rhs
    record("semicharacter cocycle", ok)

    S = d.symplectic()
    ok = True
    for _ in range(pairs if S.radical_basis else 0):
        c1 = [rng.randint(-4, 4) for _ in S.radical_basis]
        c2 = [rng.randint(-4, 4) for _ in S.radical_basis]
        comb = lambda c: [sum(ci * v[k] for ci, v in zip(c, S.radical_basis)) for k in range(n)]
        l1, l2 = comb(c1), comb(c2)
        ok = ok and ah.alpha_eval(d, [a + b for a, b in zip(l1, l2)]) == \
            (ah.alpha_eval(d, l1) + ah.alpha_eval(d, l2)) % 1
    record("alpha on radical is a homomorphism", ok)

    try:
        ker = ah.kernel_H(d)
        record("ker H = ker E", len(ker) == len(S.radical_basis))
    except ah.AHConsistencyError as exc:
        record("ker H = ker E", False, str(exc))

    C = [list(r) for r in S.change_of_basis]
    G = exact.matmul(exact.transpose(C), exact.matmul(E, C))
    r = len(S.radical_basis)
    blocks = [[[0, dv], [-dv, 0]] for dv in S.divisors]
    expected = exact.block_diag([[0] * r for _ in range(r)], *blocks) if r else exact.block_diag(*blocks)
    chain = all(b % a == 0 for a, b in zip(S.divisors, S.divisors[1:]))
    record("symplectic normal form", abs(exact.det(C)) == 1 and G == expected and chain)

    ok, detail = True, ""
    try:
        for _ in range(pairs):
            x, y = theta.sample_element(d, rng), theta.sample_element(d, rng)
            theta.commutator(d, x, y)
    except ArithmeticError as exc:
        ok, detail = False, str(exc)
    record("commutator identity", ok, detail)

    ok, detail = True, ""
    try:
        for _ in range(min(pairs, 20)):
            theta.in_center(d, theta.sample_element(d, rng))
    except ArithmeticError as exc:
        ok, detail = False, str(exc)
    record("centre test", ok, detail)

    if ah.is_pic0(d):
        ok = True
        for _ in range(pairs):
            x, y = theta.sample_element(d, rng), theta.sample_element(d, rng)
            ok = ok and theta.commutator(d, x, y).is_one
        record("commutative when H = 0", ok and jordan.jordan_constant(d) == 1)
    else:
        checks.append({"name": "commutative when H = 0", "status": "skipped", "detail": "H != 0"})
    return checks


def _print_verify(rep: dict):
    for c in rep["checks"]:
        line = f"{c['status']:>7}  {c['name']}"
        if c.get("detail"):
            line += f"  ({c['detail']})"
        print(line)
    print("ALL PASS" if rep["ok"] else "FAILURES")


def cmd_verify(args) -> int:
    doc = _load(args.path)
    if "data" not in doc:
        raise io.DocumentError("mode", "verify needs line bundle data at the top level")
    checks = verify_data(doc["data"], args.pairs, args.seed)
    ok = all(c["status"] != "FAIL" for c in checks)
    _emit(args, {"schema": io.SCHEMA, "checks": checks, "ok": ok}, _print_verify)
    return EXIT_OK if ok else EXIT_DOMAIN


# ---------------------------------------------------------------------------


def _emit(args, rep: dict, printer):
    if args.json:
        sys.stdout.write(io.dumps(rep))
    else:
        printer(rep)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--bound", type=int, default=512, help="enumeration bound for brute force")

    parser = argparse.ArgumentParser(prog="thetajordan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="invariants of one line bundle")
    p.add_argument("path", help="input document, or - for stdin")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pencil", parents=[common], help="growth table and non-Jordan certificate")
    p.add_argument("path")
    p.add_argument("--range", type=int, default=10, metavar="N")
    p.add_argument("--assume-semipositive", action="store_true",
                   help="accept semipositivity unverified in gram mode")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("heisenberg", parents=[common], help="finite Heisenberg group Jordan constant")
    p.add_argument("--type", required=True, help="comma separated divisors, e.g. 2,2")
    p.add_argument("--m", type=int, default=None, help="central order (default lcm of divisors)")
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_heisenberg)

    p = sub.add_parser("verify", parents=[common], help="run invariant checks on a data file")
    p.add_argument("path")
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (io.DocumentError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ArithmeticError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
