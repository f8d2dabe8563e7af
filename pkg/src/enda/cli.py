"""Command-line front end: ``enda <command> [options]``.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from random import Random
from typing import Any, Sequence

from .bijection import (
    BijectionRecipe,
    TwistData,
    build_twist,
    classify,
    twist_algebra,
    twist_power_identity,
)
from .endo import EndoFamily, conjugated_family, find_standard_base
from .errors import EndaError
from .gsolve import reflection_check, solve_g_system, verify_candidate, free2
from .matrix import (
    ExactMatrix,
    NonFactorizationCertificate,
    conjugate_matrix_units,
    dedekind_report,
    inverse,
    dedekind_c,
    dedekind_m,
    parse_matrix,
    r1mf_factorize,
    rank,
)
from .ncpoly import AlgebraDescriptor, all_elements, parse_poly, print_poly
from .ring import RingAutomorphism, ZW, parse_ring
from .verify import run_all

DEMO_G = "x1*x2 + x2*x1"


class UsageError(Exception):
    pass


def _color(text: str, ok: bool) -> str:
    if os.environ.get("ENDA_COLOR", "0") != "1":
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _emit(args, payload: Any, text: str) -> None:
    if args.format == "json":
        print(_compact(payload))
    else:
        print(text)


def _compact(payload: Any) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _load_json(value: str) -> Any:
    """Inline JSON or a path to a JSON file."""
    stripped = value.lstrip()
    if stripped.startswith(("{", "[")):
        return json.loads(value)
    path = Path(value)
    if not path.exists():
        raise UsageError(f"no such file: {value}")
    return json.loads(path.read_text())


def _algebra(args, n_default: int = 2) -> AlgebraDescriptor:
    if not args.ring:
        raise UsageError("--ring is required")
    ring = parse_ring(args.ring)
    n = args.n or n_default
    if args.m is None:
        return AlgebraDescriptor.free(ring, n)
    return AlgebraDescriptor.nilpotent(ring, n, args.m)


def _matrix(args) -> ExactMatrix:
    if args.paper_m:
        return dedekind_m()
    if args.paper_c:
        return dedekind_c()
    if not args.matrix:
        raise UsageError("give --matrix, --paper-m or --paper-c")
    if not args.ring:
        raise UsageError("--ring is required with --matrix")
    return parse_matrix(args.matrix, parse_ring(args.ring))


# --- commands -------------------------------------------------------------------

def cmd_rank1(args) -> int:
    A = _matrix(args)
    if args.action == "rank":
        r = rank(A)
        _emit(args, {"rank": r}, f"rank = {r}")
        return 0
    result = r1mf_factorize(A)
    if isinstance(result, NonFactorizationCertificate):
        payload = {"certificate": result.to_json()}
        _emit(args, payload, "no column x row factorization exists\n" + json.dumps(result.search_bound))
        return 0
    payload = result.to_json()
    _emit(args, payload, _compact(payload))
    return 0


def _family_matrices(obj: Any) -> dict[tuple[int, int], ExactMatrix]:
    if not isinstance(obj, dict) or "ring" not in obj or "matrices" not in obj:
        raise UsageError('family JSON must look like {"ring": ..., "matrices": {"P_1_1": [[...]], ...}}')
    ring = parse_ring(obj["ring"])
    out = {}
    for key, lit in obj["matrices"].items():
        try:
            _, i, j = key.split("_")
            out[int(i), int(j)] = parse_matrix(lit, ring)
        except ValueError:
            raise UsageError(f"bad family key {key!r}; expected P_i_j") from None
    return out


def cmd_conjugate_units(args) -> int:
    if not args.family:
        raise UsageError("--family is required")
    P = _family_matrices(_load_json(args.family))
    rho = conjugate_matrix_units(P)
    rho_inv = inverse(rho)
    ok = all(rho @ M @ rho_inv == ExactMatrix.unit(rho.ring, rho.rows, *k) for k, M in P.items())
    payload = {"rho": rho.to_literal(), "verified": ok}
    _emit(args, payload, f"rho = {json.dumps(payload['rho'])}\n{_color('verified' if ok else 'FAILED', ok)}")
    return 0 if ok else 1


def cmd_dedekind(args) -> int:
    rep = dedekind_report()
    lines = [f"{_color('PASS' if it['holds'] else 'FAIL', it['holds'])} ({it['id']}) {it['claim']}" for it in rep["items"]]
    _emit(args, rep, "\n".join(lines))
    return 0 if rep["allHold"] else 1


def cmd_gsolve(args) -> int:
    if not args.ring or args.m is None:
        raise UsageError("gsolve needs --ring and --m")
    S = solve_g_system(parse_ring(args.ring), args.m)
    payload = S.to_json()
    text = f"dimension {S.dimension}" + "".join(f"\n  {b}" for b in payload["basis"])
    _emit(args, payload, text)
    return 0


def _g_poly(args, ring):
    text = DEMO_G if args.paper_g else args.poly
    if text is None:
        raise UsageError("give --poly or --paper-g")
    return parse_poly(text, free2(ring))


def cmd_gverify(args) -> int:
    if args.paper_g:
        args.ring = args.ring or "F2"
        args.m = args.m or 3
    if not args.ring or args.m is None:
        raise UsageError("gverify needs --ring and --m")
    ring = parse_ring(args.ring)
    g = _g_poly(args, ring)
    check = verify_candidate(g, ring, args.m)
    payload = check.to_json()
    if check.ok:
        refl = reflection_check(g, args.m)
        payload["reflection"] = {"reflectionFixed": refl.reflection_fixed, "parity": refl.parity_holds}
        ok = refl.holds
    else:
        payload["reflection"] = None
        ok = False
    text = _color("solution", ok) if ok else _color(f"not a solution: {check.reason} (word {check.witness})", False)
    _emit(args, payload, text)
    return 0 if ok else 1


def _tau_recipe(args) -> BijectionRecipe:
    if args.recipe:
        return BijectionRecipe.from_json(_load_json(args.recipe))
    if args.paper_g:
        args.ring = args.ring or "F2"
        args.m = args.m or 3
    if not args.ring or args.m is None:
        raise UsageError("tau needs --recipe, --paper-g, or --ring/--m/--poly")
    alg = _algebra(args)
    g = parse_poly(DEMO_G if args.paper_g else (args.poly or ""), twist_algebra(alg))
    phi = RingAutomorphism.from_label(alg.ring, args.ring_auto)
    gamma = alg.ring.parse_element(args.gamma)
    return build_twist(g, gamma, phi, alg, args.mirror)


def cmd_tau(args) -> int:
    s = _tau_recipe(args)
    if args.action == "build":
        payload = s.to_json()
        _emit(args, payload, json.dumps(payload, indent=2))
        return 0
    rep = twist_power_identity(s, samples=args.samples, rng=Random(args.seed))
    payload = rep.to_json()
    alg = s.algebra
    total = 1
    for _ in alg.words():
        total *= alg.ring.cardinality or 0
    if alg.ring.cardinality and total <= 4096 and rep.period_identity:
        fixed = all(s.power(rep.p, e) == e for e in all_elements(alg))
        payload["exhaustive"] = {"elements": total, "periodIsIdentity": fixed}
        ok = rep.ok and fixed
    else:
        ok = rep.ok
    payload["ok"] = ok
    lines = [f"tau^{r}: coefficient {c}, {_color('ok' if law else 'FAIL', law)}" for r, (c, law) in enumerate(zip(rep.coefficients, rep.power_laws), 1)]
    lines.append(f"inverse law: {_color(str(rep.inverse_law), rep.inverse_law)}")
    if "exhaustive" in payload:
        lines.append(f"tau^{rep.p} = Id on all {total} elements: {payload['exhaustive']['periodIsIdentity']}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _family_from_args(args) -> EndoFamily:
    if args.recipe:
        s = BijectionRecipe.from_json(_load_json(args.recipe))
        return conjugated_family(s, s.algebra)
    if args.family:
        return EndoFamily.from_json(_load_json(args.family))
    raise UsageError("give --family or --recipe")


def cmd_endo(args) -> int:
    fam = _family_from_args(args)
    base = find_standard_base(fam)
    if base is None:
        _emit(args, {"base": None}, _color("no standard base found", False))
        return 1
    payload = base.to_json()
    _emit(args, payload, "base: " + ", ".join(payload["base"]))
    return 0


def cmd_recipe(args) -> int:
    if not args.recipe:
        raise UsageError("--recipe is required")
    s = BijectionRecipe.from_json(_load_json(args.recipe))
    c = classify(s, rng=Random(args.seed))
    _emit(args, c.to_json(), str(c))
    return 0


def cmd_poly(args) -> int:
    if args.recipe:
        s = BijectionRecipe.from_json(_load_json(args.recipe))
        alg = s.algebra
    else:
        alg = _algebra(args)
        s = None
    if args.poly is None:
        raise UsageError("--poly is required")
    f = parse_poly(args.poly, alg)
    value = s.evaluate(f) if s else f
    if s and args.inverse:
        value = s.evaluate_inverse(f)
    payload = {"input": print_poly(f), "value": print_poly(value)}
    _emit(args, payload, print_poly(value))
    return 0


def cmd_selftest(args) -> int:
    results = run_all(seed=args.seed, scale=args.scale)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(_compact({"ok": ok, "checks": [r.to_json(args.timings) for r in results]}))
    else:
        for r in results:
            print(_color(r.line(args.timings), r.ok))
    return 0 if ok else 1


# --- parser ---------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="enda", description="Exact algebra for endomorphism semigroups of free algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(func=func)
        return p

    p = add("rank1", cmd_rank1, "rank and column x row factorization of a matrix")
    p.add_argument("action", choices=("factor", "rank"))
    p.add_argument("--ring")
    p.add_argument("--matrix")
    p.add_argument("--paper-m", action="store_true", help="built-in 2x2 matrix m over Z[sqrt(-5)]")
    p.add_argument("--paper-c", action="store_true", help="built-in rank-one matrix c over Z[sqrt(-5)]")

    p = add("conjugate-units", cmd_conjugate_units, "conjugate a matrix-unit family to E_ij")
    p.add_argument("--family", help='JSON (inline or path): {"ring": ..., "matrices": {"P_1_1": ...}}')

    p = add("dedekind", cmd_dedekind, "the Z[sqrt(-5)] counterexample")
    p.add_argument("action", choices=("report",))

    p = add("gsolve", cmd_gsolve, "solve the symmetric cocycle system")
    p.add_argument("--ring")
    p.add_argument("--m", type=int)

    p = add("gverify", cmd_gverify, "check one cocycle candidate")
    p.add_argument("--ring")
    p.add_argument("--m", type=int)
    p.add_argument("--poly")
    p.add_argument("--paper-g", action="store_true", help=f"use g = {DEMO_G} over F2 with m = 3")

    p = add("tau", cmd_tau, "build or verify a twist bijection")
    p.add_argument("action", choices=("build", "verify"))
    p.add_argument("--ring")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--poly", help="the cocycle g in x1, x2")
    p.add_argument("--gamma", default="1")
    p.add_argument("--ring-auto", default="identity")
    p.add_argument("--mirror", action="store_true")
    p.add_argument("--recipe")
    p.add_argument("--paper-g", action="store_true")

    p = add("endo", cmd_endo, "recover a standard base for a matrix-unit family")
    p.add_argument("action", choices=("standard-base",))
    p.add_argument("--family")
    p.add_argument("--recipe")

    p = add("recipe", cmd_recipe, "classify a bijection recipe")
    p.add_argument("action", choices=("classify",))
    p.add_argument("--recipe")

    p = add("poly", cmd_poly, "normalize a polynomial or apply a recipe to it")
    p.add_argument("action", choices=("eval",))
    p.add_argument("--ring")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--poly")
    p.add_argument("--recipe")
    p.add_argument("--inverse", action="store_true")

    p = add("selftest", cmd_selftest, "run every verification batch")
    p.add_argument("--scale", type=float, default=1.0, help="fraction of the full sample counts")
    p.add_argument("--timings", action="store_true", help="append wall-clock times (output is then not reproducible)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, EndaError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"enda: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
