"""Endomorphisms of relatively free algebras, matrix-unit families and base recovery.

Composition convention: ``compose(f, g)`` applies ``g`` first, so
``apply(compose(f, g), a) == apply(f, apply(g, a))``.  Linear parts are
stored column-wise: column ``k`` of ``linear_part_matrix(f)`` holds the
coefficients of the degree-1 part of ``f(x_k)``.  With that convention
``e_ij`` maps to ``E_ij`` and ``linear_part_matrix`` is multiplicative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from random import Random
from typing import Any, Iterable, Mapping, Protocol, Sequence

from .errors import (
    AlgebraMismatch,
    NotAnAutomorphism,
    NotFromRecipe,
    NotInvertible,
    NotMatrixUnits,
    UnsupportedVariety,
)
from .matrix import (
    ExactMatrix,
    conjugate_matrix_units,
    det,
    inverse,
    random_unimodular,
)
from .ncpoly import AlgebraDescriptor, NcPoly, parse_poly, print_poly, random_poly, substitute

Key = tuple[int, int]


@dataclass(frozen=True)
class Endo:
    algebra: AlgebraDescriptor
    images: tuple[NcPoly, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.algebra.n:
            raise AlgebraMismatch(f"need {self.algebra.n} images, got {len(images)}")
        for img in images:
            if img.algebra != self.algebra:
                raise AlgebraMismatch("generator image lives in another algebra")
        object.__setattr__(self, "images", images)

    # --- constructors --------------------------------------------------------
    @classmethod
    def identity(cls, algebra: AlgebraDescriptor) -> "Endo":
        return cls(algebra, tuple(algebra.gens()))

    @classmethod
    def zero(cls, algebra: AlgebraDescriptor) -> "Endo":
        return cls(algebra, tuple(algebra.zero() for _ in range(algebra.n)))

    @classmethod
    def parse(cls, algebra: AlgebraDescriptor, images: Sequence[str]) -> "Endo":
        return cls(algebra, tuple(parse_poly(t, algebra) for t in images))

    @classmethod
    def from_matrix(cls, L: ExactMatrix, algebra: AlgebraDescriptor) -> "Endo":
        """Linear endomorphism whose linear-part matrix is ``L``."""
        n = algebra.n
        if L.shape != (n, n) or L.ring != algebra.ring:
            raise AlgebraMismatch("matrix does not match the algebra")
        images = []
        for k in range(n):
            images.append(NcPoly(algebra, {(r + 1,): L.data[r][k] for r in range(n)}))
        return cls(algebra, tuple(images))

    # --- action --------------------------------------------------------------
    def apply(self, a: NcPoly) -> NcPoly:
        if a.algebra != self.algebra:
            raise AlgebraMismatch(f"{a.algebra} vs {self.algebra}")
        return substitute(a, self.images)

    __call__ = apply

    def compose(self, other: "Endo") -> "Endo":
        """``self`` after ``other``."""
        if other.algebra != self.algebra:
            raise AlgebraMismatch("endomorphisms of different algebras")
        return Endo(self.algebra, tuple(substitute(g, self.images) for g in other.images))

    def __matmul__(self, other: "Endo") -> "Endo":
        return self.compose(other)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def is_linear(self) -> bool:
        return all(img.is_homogeneous(1) for img in self.images)

    def linear_part_matrix(self) -> ExactMatrix:
        R = self.algebra.ring
        n = self.algebra.n
        return ExactMatrix(
            R, n, n,
            tuple(tuple(self.images[k].coefficient((r + 1,)).payload for k in range(n)) for r in range(n)),
        )

    def linear_part(self) -> "Endo":
        return Endo(self.algebra, tuple(img.linear_part() for img in self.images))

    # --- automorphisms -------------------------------------------------------
    def is_automorphism(self) -> bool:
        """Decided by the linear part; only for nilpotent varieties."""
        if not self.algebra.is_nilpotent:
            raise UnsupportedVariety("no automorphism test for the free associative algebra")
        L = self.linear_part_matrix()
        if not self.algebra.ring.is_unit(det(L).payload):
            return False
        inv = self._lift_inverse(inverse(L))
        ident = Endo.identity(self.algebra)
        if self.compose(inv) != ident or inv.compose(self) != ident:
            raise ArithmeticError("degree-lifted inverse failed to invert")
        return True

    def is_invertible(self) -> bool:
        """Automorphism test usable for every variety in scope.

        In the free algebra only linear endomorphisms are decided; anything
        else raises UnsupportedVariety.
        """
        if self.algebra.is_nilpotent:
            return self.is_automorphism()
        if not self.is_linear():
            raise UnsupportedVariety("nonlinear endomorphism of a free associative algebra")
        return self.algebra.ring.is_unit(det(self.linear_part_matrix()).payload)

    def inverse(self) -> "Endo":
        L = self.linear_part_matrix()
        R = self.algebra.ring
        if not R.is_unit(det(L).payload):
            raise NotAnAutomorphism("linear part is not invertible over the coefficient ring")
        if not self.algebra.is_nilpotent and not self.is_linear():
            raise UnsupportedVariety("nonlinear endomorphism of a free associative algebra")
        return self._lift_inverse(inverse(L))

    def _lift_inverse(self, L_inv: ExactMatrix) -> "Endo":
        """Solve h with f_i(h_1, ..., h_n) = x_i one degree at a time.

        Writing f_i = sum_r L[r][i] x_r + N_i gives h = (L^T)^-1 (x - N(h)); each
        pass fixes the next homogeneous degree, so m - 1 passes suffice.
        """
        alg = self.algebra
        n = alg.n
        T = L_inv.transpose()  # (L^T)^-1
        gens = alg.gens()
        N = [img.higher_part() for img in self.images]

        def mix(vec: Sequence[NcPoly]) -> list[NcPoly]:
            out = []
            for r in range(n):
                acc = alg.zero()
                for k in range(n):
                    c = T.data[r][k]
                    if not alg.ring.is_zero(c):
                        acc = acc + vec[k].scale(c)
                out.append(acc)
            return out

        h = mix(gens)
        passes = (alg.m - 1) if alg.m is not None else 1
        for _ in range(passes):
            h = mix([gens[i] - substitute(N[i], h) for i in range(n)])
        return Endo(alg, tuple(h))

    # --- serialization --------------------------------------------------------
    def to_json(self) -> list[str]:
        return [print_poly(img) for img in self.images]

    def __str__(self):
        return "{" + ", ".join(f"x{i + 1} -> {print_poly(img)}" for i, img in enumerate(self.images)) + "}"


def compose(f: Endo, g: Endo) -> Endo:
    return f.compose(g)


def apply(f: Endo, a: NcPoly) -> NcPoly:
    return f.apply(a)


def linear_part_matrix(f: Endo) -> ExactMatrix:
    return f.linear_part_matrix()


def is_automorphism(f: Endo) -> bool:
    return f.is_automorphism()


def theta(algebra: AlgebraDescriptor, values: Sequence[NcPoly]) -> Endo:
    """theta_{a_1..a_k}: x_i -> a_i for i <= k, remaining generators fixed."""
    if len(values) > algebra.n:
        raise AlgebraMismatch("more values than generators")
    images = list(values) + algebra.gens()[len(values):]
    return Endo(algebra, tuple(images))


def standard_endo(algebra: AlgebraDescriptor, i: int, j: int) -> Endo:
    """e_ij: x_j -> x_i, every other generator -> 0."""
    images = [algebra.gen(i) if k == j else algebra.zero() for k in range(1, algebra.n + 1)]
    return Endo(algebra, tuple(images))


# --- families ---------------------------------------------------------------

class Conjugator(Protocol):
    def conjugate(self, nu: Endo) -> Endo: ...

    def conjugate_inverse(self, nu: Endo) -> Endo: ...


@dataclass(frozen=True)
class EndoFamily:
    """n^2 endomorphisms keyed by 1-based pairs (i, j).

    ``recipe`` optionally records the bijection s whose conjugation produced
    the family, which is what the gluing construction needs to invert it.
    """

    algebra: AlgebraDescriptor
    members: Mapping[Key, Endo]
    recipe: Any = field(default=None, compare=False)

    def __post_init__(self):
        n = self.algebra.n
        keys = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
        if set(self.members) != keys:
            raise NotMatrixUnits(f"family must have one member for each (i, j) with 1 <= i, j <= {n}")
        for e in self.members.values():
            if e.algebra != self.algebra:
                raise AlgebraMismatch("family member lives in another algebra")
        object.__setattr__(self, "members", dict(self.members))

    @property
    def n(self) -> int:
        return self.algebra.n

    def __getitem__(self, key: Key) -> Endo:
        return self.members[key]

    def keys(self) -> list[Key]:
        return sorted(self.members)

    def matrix_unit_defect(self) -> Key | None:
        """First pair of keys breaking e_ij e_mk = delta_jm e_ik, as (ij, mk) flattened."""
        zero = Endo.zero(self.algebra)
        for (i, j) in self.keys():
            if self[i, j].is_zero():
                return (i, j, i, j)
            for (m, k) in self.keys():
                expected = self[i, k] if j == m else zero
                if self[i, j].compose(self[m, k]) != expected:
                    return (i, j, m, k)
        return None

    def is_matrix_unit_family(self) -> bool:
        return self.matrix_unit_defect() is None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "algebra": self.algebra.to_json(),
            "images": {f"e_{i}_{j}": self[i, j].to_json() for (i, j) in self.keys()},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "EndoFamily":
        alg = AlgebraDescriptor.from_json(obj["algebra"])
        if int(obj["n"]) != alg.n:
            raise AlgebraMismatch("family size differs from the generator count")
        members = {}
        for key, images in obj["images"].items():
            _, i, j = key.split("_")
            members[int(i), int(j)] = Endo.parse(alg, images)
        return cls(alg, members)


def standard_endos(algebra: AlgebraDescriptor) -> EndoFamily:
    n = algebra.n
    return EndoFamily(
        algebra,
        {(i, j): standard_endo(algebra, i, j) for i in range(1, n + 1) for j in range(1, n + 1)},
    )


def conjugated_family(recipe: Conjugator, algebra: AlgebraDescriptor) -> EndoFamily:
    """Phi(e_ij) = s e_ij s^-1 for every i, j, remembering the recipe."""
    std = standard_endos(algebra)
    return EndoFamily(algebra, {k: recipe.conjugate(e) for k, e in std.members.items()}, recipe)


# --- sigma matrices and gluing --------------------------------------------------

@dataclass(frozen=True)
class SigmaMatrix:
    sigma: tuple[int, ...]
    entries: tuple[tuple[NcPoly, ...], ...]

    def __getitem__(self, key: Key) -> NcPoly:
        i, j = key
        return self.entries[i - 1][j - 1]

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "entries": [[print_poly(t) for t in row] for row in self.entries]}


def _check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    return sigma


def sigma_matrix(family: EndoFamily, sigma: Sequence[int]) -> SigmaMatrix:
    """t_ij = family(i, j) applied to x_sigma(j)."""
    n = family.n
    sigma = _check_permutation(sigma, n)
    gens = family.algebra.gens()
    entries = tuple(
        tuple(family[i, j].apply(gens[sigma[j - 1] - 1]) for j in range(1, n + 1)) for i in range(1, n + 1)
    )
    return SigmaMatrix(sigma, entries)


def satisfies_gluing(family: EndoFamily, alpha: Endo, alphas: Sequence[Endo], sigma: Sequence[int]) -> bool:
    """alpha(t_ij) == alpha_i(t_ij) for every entry of the sigma matrix."""
    T = sigma_matrix(family, sigma)
    n = family.n
    return all(
        alpha.apply(T[i, j]) == alphas[i - 1].apply(T[i, j]) for i in range(1, n + 1) for j in range(1, n + 1)
    )


def glue_endomorphism(family: EndoFamily, alphas: Sequence[Endo], sigma: Sequence[int]) -> Endo:
    """The endomorphism alpha with alpha(t_ij) = alpha_i(t_ij) on the sigma matrix.

    Built as alpha = Phi(beta) with beta(x_i) = Phi^-1(alpha_i)(x_i).  The
    result is checked against the gluing identity for ``sigma`` and for every
    other permutation, which pins it down uniquely.
    """
    if family.recipe is None:
        raise NotFromRecipe("gluing needs the bijection behind the family to form Phi^-1")
    n = family.n
    if len(alphas) != n:
        raise AlgebraMismatch(f"need {n} endomorphisms, got {len(alphas)}")
    sigma = _check_permutation(sigma, n)
    s = family.recipe
    gens = family.algebra.gens()
    y = [s.conjugate_inverse(alphas[i]).apply(gens[i]) for i in range(n)]
    beta = Endo(family.algebra, tuple(y))
    alpha = s.conjugate(beta)
    for perm in itertools.permutations(range(1, n + 1)):
        if not satisfies_gluing(family, alpha, alphas, perm):
            raise ArithmeticError(f"gluing identity fails for sigma = {perm}")
    return alpha


# --- standard-base recovery -------------------------------------------------------

@dataclass(frozen=True)
class StandardBase:
    base: tuple[NcPoly, ...]
    sigma: tuple[int, ...]
    rho: ExactMatrix

    def to_json(self) -> dict:
        return {
            "base": [print_poly(z) for z in self.base],
            "sigma": list(self.sigma),
            "rho": self.rho.to_literal(),
        }


def find_standard_base(family: EndoFamily) -> StandardBase | None:
    """A base z_1..z_n on which family(i, j) acts as e_ij, or None.

    Scans permutations sigma until some t_ij = family(i, j)(x_sigma(j)) has a
    nonzero linear part, conjugates the linear parts A_ij to matrix units,
    reads off the linear base y, and sets z_i = family(i, 1)(y_1).
    """
    alg = family.algebra
    if not alg.is_nilpotent:
        raise UnsupportedVariety("base recovery is implemented for nilpotent varieties")
    defect = family.matrix_unit_defect()
    if defect is not None:
        raise NotMatrixUnits(f"family breaks the matrix-unit relations at {defect}")
    n = family.n
    gens = alg.gens()
    probe = None
    for perm in itertools.permutations(range(1, n + 1)):
        T = sigma_matrix(family, perm)
        if any(not T[i, j].linear_part().is_zero() for i in range(1, n + 1) for j in range(1, n + 1)):
            probe = perm
            break
    if probe is None:
        return None
    A = {k: family[k].linear_part_matrix() for k in family.keys()}
    rho = conjugate_matrix_units(A)
    rho_inv = inverse(rho)
    y1 = NcPoly(alg, {(r + 1,): rho_inv.data[r][0] for r in range(n)})
    z = tuple(family[i, 1].apply(y1) for i in range(1, n + 1))
    base_map = Endo(alg, z)
    if not base_map.is_automorphism():
        return None
    zero = alg.zero()
    for (i, j) in family.keys():
        for m in range(1, n + 1):
            if family[i, j].apply(z[m - 1]) != (z[i - 1] if j == m else zero):
                return None
    return StandardBase(z, probe, rho)


# --- sampling ----------------------------------------------------------------

def random_endo(algebra: AlgebraDescriptor, rng: Random, max_terms: int = 4, bound: int = 3) -> Endo:
    return Endo(algebra, tuple(random_poly(algebra, rng, max_terms, bound=bound) for _ in range(algebra.n)))


def random_automorphism(
    algebra: AlgebraDescriptor, rng: Random, higher_terms: int = 3, bound: int = 3, linear: bool = False
) -> Endo:
    """Invertible linear part plus random terms of degree >= 2."""
    L = random_unimodular(algebra.ring, algebra.n, rng, steps=3 * algebra.n + 2, bound=bound)
    lin = Endo.from_matrix(L, algebra)
    if linear or not algebra.is_nilpotent or algebra.m <= 2:
        return lin
    extra = []
    for _ in range(algebra.n):
        extra.append(random_poly(algebra, rng, higher_terms, bound=bound, min_degree=2))
    return Endo(algebra, tuple(a + b for a, b in zip(lin.images, extra)))
