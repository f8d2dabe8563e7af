"""Reproducible verification batches.

Each check returns a :class:`CheckResult`.  ``scale`` shrinks sample counts
for quick runs (``selftest``); ``scale=1`` runs the full batch sizes.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from random import Random
from typing import Callable

from .bijection import (
    P_MIRROR,
    P_SEMI_INNER,
    SEMI_INNER,
    INNER,
    MIRROR,
    BijectionRecipe,
    build_twist,
    classify,
    random_recipe,
    structure_failures,
    twist_power_identity,
    verify_derivative_isomorphism,
)
from .endo import Endo, conjugated_family, find_standard_base, random_endo
from .errors import NotMatrixUnits, RankNotOne
from .gsolve import (
    brute_force_solutions,
    power_solution,
    reflection_check,
    solve_g_system,
    verify_candidate,
)
from .matrix import (
    ExactMatrix,
    Rank1Factorization,
    conjugate_matrix_units,
    dedekind_report,
    elementary_family,
    inverse,
    parse_matrix,
    r1mf_factorize,
    random_unimodular,
    rank,
)
from .ncpoly import (
    AlgebraDescriptor,
    NcPoly,
    all_elements,
    distributive_space,
    is_distributive,
    parse_poly,
    print_poly,
    random_poly,
    support_after_shift,
)
from .ring import QQ, Z, ZW, PrimeField, parse_ring

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)
F9 = parse_ring("F9=F3[t]/(t^2+1)")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self, timings: bool = True) -> str:
        text = f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail}"
        return f"{text} ({self.seconds:.2f}s)" if timings else text

    def to_json(self, timings: bool = True) -> dict:
        out = {"name": self.name, "ok": self.ok, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _n(count: int, scale: float) -> int:
    return max(1, int(round(count * scale)))


def _timed(name: str, fn: Callable[[], tuple[bool, str]], limit: float | None = None) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail += f"; exceeded {limit:g}s budget"
    return CheckResult(name, ok, detail, dt)


# --- 1 -------------------------------------------------------------------------

def check_dedekind(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rep = dedekind_report()
        holds = [it["holds"] for it in rep["items"]]
        det_a = rep["items"][2]["witness"]["det a"]
        det_m = rep["items"][0]["witness"]["det"]
        ok = all(holds) and len(holds) == 5 and det_a == "1" and det_m == "2"
        return ok, f"items {holds}, det m = {det_m}, det a = {det_a}"

    return _timed("dedekind counterexample", run, 1.0)


# --- 2 -------------------------------------------------------------------------

def check_r1mf_integers(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        n_ok = n_total = 0
        for _ in range(_n(1000, scale)):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            c = [rng.randint(-9, 9) for _ in range(rows)]
            d = [rng.randint(-9, 9) for _ in range(cols)]
            if not any(c):
                c[rng.randrange(rows)] = rng.choice([-1, 1]) * rng.randint(1, 9)
            if not any(d):
                d[rng.randrange(cols)] = rng.choice([-1, 1]) * rng.randint(1, 9)
            A = ExactMatrix.from_rows(Z, [[x * y for y in d] for x in c])
            f = r1mf_factorize(A)
            n_total += 1
            n_ok += isinstance(f, Rank1Factorization) and f.product() == A
        rejected = 0
        n_rank2 = _n(100, scale)
        for _ in range(n_rank2):
            while True:
                rows, cols = rng.randint(2, 6), rng.randint(2, 6)
                vecs = [([rng.randint(-9, 9) for _ in range(rows)], [rng.randint(-9, 9) for _ in range(cols)]) for _ in range(2)]
                A = ExactMatrix.from_rows(
                    Z, [[sum(c[i] * d[j] for c, d in vecs) for j in range(cols)] for i in range(rows)]
                )
                if rank(A) == 2:
                    break
            try:
                r1mf_factorize(A)
            except RankNotOne:
                rejected += 1
        ok = n_ok == n_total and rejected == n_rank2
        return ok, f"{n_ok}/{n_total} rank-1 factored exactly, {rejected}/{n_rank2} rank-2 rejected"

    return _timed("rank-one factorization over Z", run, 10.0)


# --- 3 -------------------------------------------------------------------------

def check_g_system(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        problems = []
        dims = {}
        for R in (F2, F3, F5):
            for m in (3, 4, 5, 6):
                S = solve_g_system(R, m)
                dims[f"{R.spec},{m}"] = S.dimension
                if (S.dimension > 0) != (m % 2 == 0 or R.characteristic == 2):
                    problems.append(f"dimension {S.dimension} for ({R.spec}, m={m})")
                for g in S.basis:
                    if not verify_candidate(g, R, m) or not reflection_check(g, m):
                        problems.append(f"basis element fails checks for ({R.spec}, m={m})")
        S = solve_g_system(F2, 3)
        oracle = brute_force_solutions(F2, 3)
        target = parse_poly("x1*x2 + x2*x1", S.basis[0].algebra) if S.basis else None
        if [str(b) for b in S.basis] != ["x1*x2 + x2*x1"] or S.span() != oracle or target not in oracle:
            problems.append("(F2, m=3) basis disagrees with brute force")
        S = solve_g_system(F3, 4)
        if power_solution(F3, 4) not in S.span():
            problems.append("(F3, m=4) misses (x1+x2)^3 - x1^3 - x2^3")
        return not problems, "; ".join(problems) or f"dimensions {dims}"

    return _timed("cocycle system grid", run, 30.0)


# --- 4 -------------------------------------------------------------------------

def f2_twist(mirror: bool = False) -> BijectionRecipe:
    alg = AlgebraDescriptor.nilpotent(F2, 2, 3)
    g = parse_poly("x1*x2 + x2*x1", alg.with_generators(2))
    return build_twist(g, 1, None, alg, mirror)


def check_twist(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        problems = []
        tau = f2_twist()
        alg = tau.algebra
        elems = list(all_elements(alg))
        if len(elems) != 64 or not all(tau.power(2, e) == e for e in elems):
            problems.append("tau^2 != Id")
        x1, x2 = alg.gens()
        if tau.evaluate(x1 + x2) == x1 + x2:
            problems.append("tau(x1 + x2) = x1 + x2")
        verdict = classify(tau)
        if (verdict.verdict, verdict.p) != (P_SEMI_INNER, 2):
            problems.append(f"classified as {verdict}")
        for _ in range(_n(100, scale)):
            nu, mu = random_endo(alg, rng), random_endo(alg, rng)
            lhs = tau.conjugate_inverse(nu.compose(mu))
            rhs = tau.conjugate_inverse(nu).compose(tau.conjugate_inverse(mu))
            if lhs != rhs:
                problems.append(f"Psi fails on {nu}, {mu}")
                break
        mv = classify(f2_twist(mirror=True))
        if (mv.verdict, mv.p) != (P_MIRROR, 2):
            problems.append(f"mirror variant classified as {mv}")
        alg3 = AlgebraDescriptor.nilpotent(F3, 2, 4)
        tau3 = build_twist(power_solution(F3, 4), 1, None, alg3)
        for _ in range(_n(200, scale)):
            e = random_poly(alg3, rng, 8)
            if tau3.power(3, e) != e:
                problems.append(f"tau^3 moves {e}")
                break
        if not twist_power_identity(tau3).ok or not twist_power_identity(tau).ok:
            problems.append("power identities fail")
        return not problems, "; ".join(problems) or "tau^2 = Id on 64 elements, PSemiInner(2), PMirror(2), tau^3 = Id over F3"

    return _timed("twist bijection", run)


# --- 5 -------------------------------------------------------------------------

def check_matrix_units(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        good = 0
        total = _n(200, scale)
        for _ in range(total):
            n = rng.randint(1, 4)
            Q = random_unimodular(Z, n, rng, steps=3 * n + 2, bound=3)
            Qi = inverse(Q)
            P = {k: Q @ E @ Qi for k, E in elementary_family(Z, n).items()}
            rho = conjugate_matrix_units(P)
            rho_inv = inverse(rho)
            good += all(rho @ M @ rho_inv == ExactMatrix.unit(Z, n, *k) for k, M in P.items())
        rejected = 0
        bad_total = _n(20, scale)
        for t in range(bad_total):
            n = rng.randint(2, 4)
            Q = random_unimodular(Z, n, rng, steps=3 * n + 2, bound=3)
            Qi = inverse(Q)
            P = {k: Q @ E @ Qi for k, E in elementary_family(Z, n).items()}
            key = (rng.randint(1, n), rng.randint(1, n))
            i, j = rng.randrange(n), rng.randrange(n)
            rows = [list(r) for r in P[key].data]
            rows[i][j] += rng.choice([-2, -1, 1, 2])
            P[key] = ExactMatrix.from_rows(Z, rows)
            try:
                conjugate_matrix_units(P)
            except NotMatrixUnits:
                rejected += 1
        ok = good == total and rejected == bad_total
        return ok, f"{good}/{total} families conjugated to E_ij, {rejected}/{bad_total} corrupted families rejected"

    return _timed("matrix-unit conjugation", run)


# --- 6 -------------------------------------------------------------------------

def check_standard_base(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        good = 0
        total = _n(100, scale)
        for _ in range(total):
            R = rng.choice([F2, F3])
            alg = AlgebraDescriptor.nilpotent(R, rng.randint(1, 3), rng.randint(2, 4))
            s = random_recipe(alg, rng, "semi-inner")
            fam = conjugated_family(s, alg)
            base = find_standard_base(fam)
            if base is None:
                continue
            z = base.base
            zero = alg.zero()
            good += all(
                fam[i, j].apply(z[k - 1]) == (z[i - 1] if j == k else zero)
                for (i, j) in fam.keys()
                for k in range(1, alg.n + 1)
            )
        return good == total, f"{good}/{total} conjugated families act standardly on the recovered base"

    return _timed("standard-base recovery", run)


# --- 7 -------------------------------------------------------------------------

def check_distributive(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        problems = []
        for R in (F2, Z):
            basis = distributive_space(R, 4)
            if sorted(print_poly(b) for b in basis) != ["x1*x2", "x2*x1"]:
                problems.append(f"{R.spec}: basis {[print_poly(b) for b in basis]}")
        alg = AlgebraDescriptor.free(F2, 2)
        words = alg.words(3)
        found = set()
        for coeffs in itertools.product((0, 1), repeat=len(words)):
            P = NcPoly(alg, dict(zip(words, coeffs)))
            if is_distributive(P):
                found.add(P)
        expected = {NcPoly(alg, {(1, 2): a, (2, 1): b}) for a in (0, 1) for b in (0, 1)}
        if found != expected:
            problems.append(f"brute force over F2 found {len(found)} distributive polynomials")
        return not problems, "; ".join(problems) or f"span{{x1x2, x2x1}} over F2 and Z; brute force 2^{len(words)} agrees"

    return _timed("distributive polynomials", run, 60.0)


# --- 8 -------------------------------------------------------------------------

def check_supports(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        alg = AlgebraDescriptor.free(Z, 3)
        failures = 0
        total = _n(500, scale)
        for _ in range(total):
            while True:
                u = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 6)))
                v = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 6)))
                if u != v:
                    break
            f, g = alg.monomial(u), alg.monomial(v)
            for var in (1, 2):
                if support_after_shift(f, var) & support_after_shift(g, var):
                    failures += 1
        return failures == 0, f"{total} monomial pairs, {failures} overlapping shifted supports"

    return _timed("shifted support disjointness", run)


# --- 9 -------------------------------------------------------------------------

def _recipe_pool(rng: Random):
    """(algebra, kind, cocycles) triples covering every recipe class."""
    pool = []
    for R, m in ((F2, 3), (F2, 4), (F3, 4)):
        alg = AlgebraDescriptor.nilpotent(R, 2, m)
        twists = [g.to_algebra(alg.with_generators(2)) for g in solve_g_system(R, m).basis]
        for kind in ("inner", "semi-inner", "mirror", "twist", "twist-mirror"):
            pool.append((alg, kind, twists))
    for R, m in ((F9, 3), (Z, 3), (QQ, 3), (ZW, 3)):
        alg = AlgebraDescriptor.nilpotent(R, 2, m)
        for kind in ("inner", "semi-inner", "mirror"):
            pool.append((alg, kind, []))
    return pool


def check_derivative_structure(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        pool = _recipe_pool(rng)
        problems = []
        total = max(_n(200, scale), len(pool))
        samples = _n(200, scale)
        seen = set()
        for t in range(total):
            alg, kind, twists = pool[t % len(pool)]
            s = random_recipe(alg, rng, kind, twists)
            seen.add(classify(s).verdict)
            rep = verify_derivative_isomorphism(s, samples, rng)
            if not rep.ok:
                problems.append(f"{kind} over {alg.ring.spec}: {rep.failures[0]}")
            bad = structure_failures(s, samples // 4 or 1, rng)
            if bad:
                problems.append(f"{kind} over {alg.ring.spec}: {bad[0]}")
            if (s.twist is None) != all(
                s.derivative_bot(a, b) == a + b for a, b in ((alg.gen(1), alg.gen(2)),)
            ):
                problems.append(f"{kind}: bot is plain addition iff untwisted fails")
            if len(problems) > 3:
                break
        expected = {INNER, SEMI_INNER, MIRROR, P_SEMI_INNER, P_MIRROR}
        if not expected <= seen:
            problems.append(f"classes covered: {sorted(seen)}")
        return not problems, "; ".join(problems) or f"{total} recipes x {samples} samples, classes {sorted(seen)}"

    return _timed("derived operations", run)


# --- 10 ------------------------------------------------------------------------

def check_round_trip(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def run():
        rng = Random(seed)
        rings = [Z, QQ, F2, F3, F5, F9, ZW]
        problems = []
        count = _n(1000, scale)
        for R in rings:
            alg = AlgebraDescriptor.nilpotent(R, 3, 5)
            for _ in range(count):
                f = random_poly(alg, rng, 6)
                if parse_poly(print_poly(f), alg) != f:
                    problems.append(f"{R.spec}: {print_poly(f)}")
                    break
            if parse_ring(R.spec) != R:
                problems.append(f"ring literal {R.spec}")
            for _ in range(_n(50, scale)):
                r, c = rng.randint(1, 4), rng.randint(1, 4)
                M = ExactMatrix.from_rows(R, [[R.random(rng) for _ in range(c)] for _ in range(r)])
                if parse_matrix(json.dumps(M.to_literal()), R) != M:
                    problems.append(f"matrix literal over {R.spec}")
                    break
        return not problems, "; ".join(problems) or f"{count} polynomials per ring over {len(rings)} rings"

    return _timed("literal round trips", run)


CHECKS: list[tuple[int, Callable[..., CheckResult]]] = [
    (1, check_dedekind),
    (2, check_r1mf_integers),
    (3, check_g_system),
    (4, check_twist),
    (5, check_matrix_units),
    (6, check_standard_base),
    (7, check_distributive),
    (8, check_supports),
    (9, check_derivative_structure),
    (10, check_round_trip),
]


def run_all(seed: int = 0, scale: float = 1.0) -> list[CheckResult]:
    return [fn(seed, scale) for _, fn in CHECKS]
