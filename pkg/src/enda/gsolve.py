"""Symmetric cocycles g(x1, x2) of degree m - 1 and the linear system they satisfy.

A cocycle here is a polynomial g, homogeneous of degree m - 1 in two
generators, with

    g(x1, x2) = g(x2, x1)
    g(x1, x2) + g(x1 + x2, x3) = g(x2, x3) + g(x1, x2 + x3)
    g(x1, -x1) = 0

These are exactly the polynomials that can twist addition in an
m-nilpotent algebra.  Computations run in free algebras so no truncation
interferes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PrerequisiteFailed, UnsupportedRing, WrongDegree
from .matrix import ExactMatrix, kernel_basis
from .ncpoly import AlgebraDescriptor, NcPoly, format_word, print_poly, substitute, word_key
from .ring import Integers, Ring, Z

# (x1, x2) -> (x1 + x2, -x1): a substitution of order 6 up to sign
REFLECTION = ((1, 1), (-1, 0))


def _cube(M):
    def mul(A, B):
        return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))

    return mul(mul(M, M), M)


assert _cube(REFLECTION) == ((-1, 0), (0, -1)), "reflection matrix must cube to -I"


def free2(ring: Ring) -> AlgebraDescriptor:
    return AlgebraDescriptor.free(ring, 2)


def _as_free(g: NcPoly, n: int) -> NcPoly:
    return g.to_algebra(AlgebraDescriptor.free(g.ring, n))


def swap(g: NcPoly) -> NcPoly:
    """g(x2, x1) in the same algebra."""
    x = g.algebra.gens()
    return substitute(g, [x[1], x[0], *x[2:]])


def cocycle_defect(g: NcPoly) -> NcPoly:
    """g(x1,x2) + g(x1+x2,x3) - g(x2,x3) - g(x1,x2+x3) in the free algebra on 3 generators."""
    h = _as_free(g, 2)
    amb = AlgebraDescriptor.free(g.ring, 3)
    x1, x2, x3 = amb.gens()
    return (
        substitute(h, [x1, x2])
        + substitute(h, [x1 + x2, x3])
        - substitute(h, [x2, x3])
        - substitute(h, [x1, x2 + x3])
    )


def antipode_defect(g: NcPoly) -> NcPoly:
    """g(x1, -x1) in the free algebra on 2 generators."""
    h = _as_free(g, 2)
    x1 = h.algebra.gen(1)
    return substitute(h, [x1, -x1])


def _check_two_generators(g: NcPoly):
    if any(i > 2 for i in g.generators_used()):
        raise WrongDegree("cocycle candidates must be polynomials in x1, x2")


def unknown_basis(ring: Ring, m: int) -> list[NcPoly]:
    """Swap-orbit sums w + swap(w) over words of length m - 1 starting with x1."""
    alg = free2(ring)
    out = []
    for tail in itertools.product((1, 2), repeat=m - 2):
        w = (1,) + tail
        w2 = tuple(3 - i for i in w)
        out.append(NcPoly(alg, {w: ring.one, w2: ring.one}))
    return out


@dataclass(frozen=True)
class GSolutionSpace:
    ring: Ring
    m: int
    basis: tuple[NcPoly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.spec,
            "m": self.m,
            "dimension": self.dimension,
            "basis": [print_poly(g) for g in self.basis],
        }

    def span(self) -> set[NcPoly]:
        """Every element of the solution space (finite rings only)."""
        elems = list(self.ring.elements())
        alg = free2(self.ring)
        out = set()
        for coeffs in itertools.product(elems, repeat=self.dimension):
            acc = alg.zero()
            for c, b in zip(coeffs, self.basis):
                acc = acc + b.scale(c)
            out.add(acc)
        return out


def solve_g_system(ring: Ring, m: int) -> GSolutionSpace:
    """Kernel of the linear conditions on symmetric degree-(m-1) polynomials."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if not (ring.is_field or isinstance(ring, Integers)):
        raise UnsupportedRing(f"the cocycle system is solved over fields and Z, not {ring.spec}")
    unknowns = unknown_basis(ring, m)
    columns = []
    for b in unknowns:
        col = {("c",) + w: c for w, c in cocycle_defect(b).term_dict().items()}
        col.update({("a",) + w: c for w, c in antipode_defect(b).term_dict().items()})
        columns.append(col)
    rows = sorted({k for col in columns for k in col}, key=lambda k: (k[0], word_key(k[1:])))
    if rows:
        A = ExactMatrix(ring, len(rows), len(unknowns), tuple(tuple(col.get(k, ring.zero) for col in columns) for k in rows))
        vectors = [[v.data[i][0] for i in range(len(unknowns))] for v in kernel_basis(A)]
    else:
        vectors = [[ring.one if i == j else ring.zero for i in range(len(unknowns))] for j in range(len(unknowns))]
    alg = free2(ring)
    basis = []
    for v in vectors:
        g = alg.zero()
        for c, b in zip(v, unknowns):
            if not ring.is_zero(c):
                g = g + b.scale(c)
        check = verify_candidate(g, ring, m)
        if not check.ok:
            raise ArithmeticError(f"solver produced a non-solution: {check.reason}")
        basis.append(g)
    return GSolutionSpace(ring, m, tuple(basis))


@dataclass(frozen=True)
class CandidateCheck:
    ok: bool
    reason: str | None = None
    witness: str | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "witness": self.witness}


def _first_difference(f: NcPoly, h: NcPoly, words) -> str | None:
    for w in sorted(words, key=word_key):
        if f.coefficient(w) != h.coefficient(w):
            return format_word(w)
    return None


def verify_candidate(g: NcPoly, ring: Ring, m: int) -> CandidateCheck:
    """Is g a swap-symmetric solution of the cocycle system of degree m - 1?"""
    if g.ring != ring:
        raise WrongDegree(f"candidate has coefficients in {g.ring.spec}, expected {ring.spec}")
    _check_two_generators(g)
    if not g.is_homogeneous(m - 1):
        raise WrongDegree(f"candidate is not homogeneous of degree {m - 1}")
    h = _as_free(g, 2)
    sw = swap(h)
    if sw != h:
        witness = _first_difference(h, sw, sw.support()) or _first_difference(h, sw, h.support())
        return CandidateCheck(False, "not symmetric under x1 <-> x2", witness)
    d = cocycle_defect(h)
    if not d.is_zero():
        return CandidateCheck(False, "cocycle identity fails", format_word(d.terms()[0][0]))
    a = antipode_defect(h)
    if not a.is_zero():
        return CandidateCheck(False, "g(x1, -x1) != 0", format_word(a.terms()[0][0]))
    return CandidateCheck(True)


@dataclass(frozen=True)
class ReflectionCheck:
    reflection_fixed: bool
    parity_holds: bool

    @property
    def holds(self) -> bool:
        return self.reflection_fixed and self.parity_holds

    def __bool__(self):
        return self.holds


def reflect(g: NcPoly) -> NcPoly:
    """S(g)(x1, x2) = -g(x1 + x2, -x1)."""
    h = _as_free(g, 2)
    x1, x2 = h.algebra.gens()
    (a, b), (c, d) = REFLECTION
    y1 = x1.scale(a) + x2.scale(b)
    y2 = x1.scale(c) + x2.scale(d)
    return -substitute(h, [y1, y2])


def reflection_check(g: NcPoly, m: int | None = None) -> ReflectionCheck:
    """Check S(g) = g and g = (-1)^m g for a cocycle g."""
    if g.is_zero():
        return ReflectionCheck(True, True)
    if m is None:
        m = g.degree() + 1
    if not verify_candidate(g, g.ring, m):
        raise PrerequisiteFailed("g does not satisfy the cocycle system")
    h = _as_free(g, 2)
    sign = h if m % 2 == 0 else -h
    return ReflectionCheck(reflect(h) == h, sign == h)


def power_solution(ring: Ring, m: int) -> NcPoly:
    """(x1 + x2)^(m-1) - x1^(m-1) - x2^(m-1)."""
    alg = free2(ring)
    x1, x2 = alg.gens()
    return (x1 + x2) ** (m - 1) - x1 ** (m - 1) - x2 ** (m - 1)


def brute_force_solutions(ring: Ring, m: int) -> set[NcPoly]:
    """All solutions found by trying every coefficient vector on the 2^(m-1) words."""
    alg = free2(ring)
    words = list(itertools.product((1, 2), repeat=m - 1))
    elems = list(ring.elements())
    out = set()
    for coeffs in itertools.product(elems, repeat=len(words)):
        g = NcPoly(alg, dict(zip(words, coeffs)))
        if verify_candidate(g, ring, m):
            out.add(g)
    return out
