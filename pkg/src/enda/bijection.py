"""Closed-form adjoint bijections s of a relatively free algebra.

A recipe evaluates as

    s(a) = c * tw( M?( sigma( phi(a) ) ) )

where ``phi`` acts on coefficients, ``sigma`` is an automorphism of the
algebra, ``M`` reverses words (when ``mirror`` is set), ``tw`` folds the
terms through the twisted addition ``u (+) v = u + v + gamma g(u, v)`` and
``c`` is a unit.  Each stage is a bijection with an explicit inverse.

The operations of the derived algebra are computed in the base
``y_i = s(x_i)``: for an expression ``E`` in ``x1, x2`` we write ``s(E)`` as a
polynomial ``P`` in the ``y_i`` and substitute ``(a, b)`` for ``(y_1, y_2)``.
When ``s`` fixes every generator this is the plain substitution
``theta_{a,b} s(E)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from random import Random
from typing import Any, Callable, Mapping, Sequence

from .endo import Endo
from .errors import (
    AlgebraMismatch,
    CocycleViolated,
    NotAnAutomorphism,
    NotAUnit,
    NotHomogeneous,
    NotSymmetric,
    ScalarIncompatible,
    TwistInCharZero,
)
from .gsolve import antipode_defect, cocycle_defect, swap
from .ncpoly import AlgebraDescriptor, NcPoly, parse_poly, print_poly, random_poly, substitute
from .ring import RingAutomorphism, RingElement

INNER = "Inner"
SEMI_INNER = "SemiInner"
MIRROR = "Mirror"
P_SEMI_INNER = "PSemiInner"
P_MIRROR = "PMirror"
OTHER = "Other"


@dataclass(frozen=True)
class TwistData:
    """A symmetric cocycle g in x1, x2 and the factor gamma in a (+) b = a + b + gamma g(a, b)."""

    g: NcPoly
    gamma: Any

    @property
    def is_trivial(self) -> bool:
        return self.g.is_zero() or self.g.ring.is_zero(self.gamma)

    def to_json(self) -> dict:
        return {"g": print_poly(self.g), "gamma": self.g.ring.format(self.gamma)}


def twist_algebra(algebra: AlgebraDescriptor) -> AlgebraDescriptor:
    """Two-generator algebra of the same variety, where g lives."""
    return algebra.with_generators(2)


def validate_twist(twist: TwistData, algebra: AlgebraDescriptor, phi: RingAutomorphism) -> None:
    """Raise an IllFormedTwist subclass unless g defines a consistent twisted addition."""
    g = twist.g
    R = algebra.ring
    if g.algebra != twist_algebra(algebra):
        raise AlgebraMismatch(f"twist polynomial must live in {twist_algebra(algebra)}")
    if twist.is_trivial:
        return
    if R.characteristic == 0:
        raise TwistInCharZero("a nonzero twist never becomes additive in characteristic 0")
    if not algebra.is_nilpotent:
        raise NotHomogeneous("twists need a nilpotent algebra")
    m = algebra.m
    if not g.is_homogeneous(m - 1):
        raise NotHomogeneous(f"g must be homogeneous of degree m - 1 = {m - 1}")
    if swap(g) != g:
        raise NotSymmetric("g(x1, x2) != g(x2, x1)")
    if not cocycle_defect(g).is_zero() or not antipode_defect(g).is_zero():
        raise CocycleViolated("g fails the cocycle identity or g(x1, -x1) != 0")
    # folding terms must not depend on how a scalar multiple is split up
    x = g.algebra.gen(1)
    elems = list(R.elements())
    for u, v in itertools.product(elems, repeat=2):
        if not substitute(g, [x.scale(u), x.scale(v)]).is_zero():
            raise ScalarIncompatible(f"g({R.format(u)} x, {R.format(v)} x) != 0")
    for xi in elems:
        if R.pow(xi, m - 1) != xi:
            raise ScalarIncompatible(f"{R.format(xi)}^{m - 1} != {R.format(xi)}, twist is not K-homogeneous")
    if g.map_coefficients(phi.apply) != g:
        raise ScalarIncompatible("the ring automorphism moves the coefficients of g")


@dataclass(frozen=True)
class BijectionRecipe:
    algebra: AlgebraDescriptor
    scalar: Any = None
    ring_auto: RingAutomorphism | None = None
    base_auto: Endo | None = None
    mirror: bool = False
    twist: TwistData | None = None

    def __post_init__(self):
        R = self.algebra.ring
        c = R.one if self.scalar is None else R.coerce(self.scalar)
        if not R.is_unit(c):
            raise NotAUnit(f"scalar {R.format(c)} is not a unit")
        object.__setattr__(self, "scalar", c)
        phi = self.ring_auto or RingAutomorphism(R, "identity")
        if phi.ring != R:
            raise AlgebraMismatch("ring automorphism of another ring")
        object.__setattr__(self, "ring_auto", phi)
        sigma = self.base_auto or Endo.identity(self.algebra)
        if sigma.algebra != self.algebra:
            raise AlgebraMismatch("base automorphism of another algebra")
        if not sigma.is_invertible():
            raise NotAnAutomorphism("base endomorphism is not invertible")
        object.__setattr__(self, "base_auto", sigma)
        if self.twist is not None:
            validate_twist(self.twist, self.algebra, phi)
            if self.twist.is_trivial:
                object.__setattr__(self, "twist", None)

    # --- stages ----------------------------------------------------------------
    @cached_property
    def _sigma_inv(self) -> Endo:
        return self.base_auto.inverse()

    @cached_property
    def _scalar_inv(self):
        return self.algebra.ring.inv(self.scalar)

    def _check(self, a: NcPoly):
        if a.algebra != self.algebra:
            raise AlgebraMismatch(f"{a.algebra} vs {self.algebra}")

    def _twist_correction(self, a: NcPoly) -> NcPoly:
        """tw(a) - a: the accumulated gamma g(partial sum, next term) over linear terms."""
        tw = self.twist
        alg = self.algebra
        linear = [alg.monomial(w, c) for w, c in a.terms() if len(w) == 1]
        acc = alg.zero()
        if len(linear) < 2:
            return acc
        partial = linear[0]
        for t in linear[1:]:
            acc = acc + substitute(tw.g, [partial, t])
            partial = partial + t
        return acc.scale(tw.gamma)

    def apply_twist(self, a: NcPoly) -> NcPoly:
        if self.twist is None:
            return a
        return a + self._twist_correction(a)

    def apply_twist_inverse(self, b: NcPoly) -> NcPoly:
        # the correction only sees linear terms, which the twist leaves alone
        if self.twist is None:
            return b
        return b - self._twist_correction(b)

    def evaluate(self, a: NcPoly) -> NcPoly:
        self._check(a)
        phi = self.ring_auto
        b = a if phi.is_identity else a.map_coefficients(phi.apply)
        b = self.base_auto.apply(b)
        if self.mirror:
            b = b.mirror()
        b = self.apply_twist(b)
        return b.scale(self.scalar)

    __call__ = evaluate

    def evaluate_inverse(self, b: NcPoly) -> NcPoly:
        self._check(b)
        a = b.scale(self._scalar_inv)
        a = self.apply_twist_inverse(a)
        if self.mirror:
            a = a.mirror()
        a = self._sigma_inv.apply(a)
        phi = self.ring_auto
        return a if phi.is_identity else a.map_coefficients(phi.inverse().apply)

    def power(self, r: int, a: NcPoly) -> NcPoly:
        for _ in range(r):
            a = self.evaluate(a)
        return a

    # --- induced maps on End F ----------------------------------------------------
    def conjugate(self, nu: Endo) -> Endo:
        """Phi(nu) = s nu s^-1, given by its generator images."""
        if nu.algebra != self.algebra:
            raise AlgebraMismatch("endomorphism of another algebra")
        gens = self.algebra.gens()
        return Endo(self.algebra, tuple(self.evaluate(nu.apply(self.evaluate_inverse(x))) for x in gens))

    def conjugate_inverse(self, nu: Endo) -> Endo:
        """Phi^-1(nu) = s^-1 nu s."""
        if nu.algebra != self.algebra:
            raise AlgebraMismatch("endomorphism of another algebra")
        gens = self.algebra.gens()
        return Endo(self.algebra, tuple(self.evaluate_inverse(nu.apply(self.evaluate(x))) for x in gens))

    # --- derived operations ---------------------------------------------------------
    @cached_property
    def base_change(self) -> Endo:
        """rho: x_i -> s(x_i)."""
        return Endo(self.algebra, tuple(self.evaluate(x) for x in self.algebra.gens()))

    @cached_property
    def _base_change_inverse(self) -> Endo:
        return self.base_change.inverse()

    def _in_new_base(self, expr: NcPoly) -> NcPoly:
        return self._base_change_inverse.apply(self.evaluate(expr))

    def _two_gens(self) -> list[NcPoly]:
        if self.algebra.n < 2:
            raise AlgebraMismatch("the derived operations need at least two generators")
        return self.algebra.gens()

    @cached_property
    def _star_poly(self) -> NcPoly:
        x = self._two_gens()
        return self._in_new_base(x[0] * x[1])

    @cached_property
    def _bot_poly(self) -> NcPoly:
        x = self._two_gens()
        return self._in_new_base(x[0] + x[1])

    def _circ_poly(self, xi) -> NcPoly:
        return self._in_new_base(self.algebra.gen(1).scale(xi))

    def _theta(self, P: NcPoly, values: Sequence[NcPoly]) -> NcPoly:
        for v in values:
            self._check(v)
        images = list(values) + self.algebra.gens()[len(values):]
        return substitute(P, images)

    def derivative_star(self, a: NcPoly, b: NcPoly) -> NcPoly:
        return self._theta(self._star_poly, [a, b])

    def derivative_bot(self, a: NcPoly, b: NcPoly) -> NcPoly:
        return self._theta(self._bot_poly, [a, b])

    def derivative_circ(self, xi, a: NcPoly) -> NcPoly:
        xi = self.algebra.ring.coerce(xi)
        return self._theta(self._circ_poly(xi), [a])

    # --- closed forms of the derived operations ----------------------------------------
    def predicted_star(self, a: NcPoly, b: NcPoly) -> NcPoly:
        prod = b * a if self.mirror else a * b
        return prod.scale(self._scalar_inv)

    def predicted_bot(self, a: NcPoly, b: NcPoly) -> NcPoly:
        if self.twist is None:
            return a + b
        R = self.algebra.ring
        k = R.mul(self.twist.gamma, R.pow(self.scalar, 2 - self.algebra.m))
        return a + b + substitute(self.twist.g, [a, b]).scale(k)

    def predicted_circ(self, xi, a: NcPoly) -> NcPoly:
        return a.scale(self.ring_auto.apply(self.algebra.ring.coerce(xi)))

    # --- serialization -----------------------------------------------------------------
    def to_json(self) -> dict:
        R = self.algebra.ring
        return {
            "algebra": self.algebra.to_json(),
            "scalar": R.format(self.scalar),
            "ringAuto": self.ring_auto.label,
            "baseAuto": self.base_auto.to_json(),
            "mirror": self.mirror,
            "twist": None if self.twist is None else self.twist.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Mapping, algebra: AlgebraDescriptor | None = None) -> "BijectionRecipe":
        if algebra is None:
            if "algebra" not in obj:
                raise AlgebraMismatch("recipe JSON lacks an algebra and none was supplied")
            algebra = AlgebraDescriptor.from_json(obj["algebra"])
        R = algebra.ring
        scalar = R.parse_element(str(obj.get("scalar", "1")))
        phi = RingAutomorphism.from_label(R, obj.get("ringAuto", "identity"))
        base = obj.get("baseAuto")
        sigma = Endo.parse(algebra, base) if base else None
        tw = obj.get("twist")
        twist = None
        if tw:
            g = parse_poly(tw["g"], twist_algebra(algebra))
            twist = TwistData(g, R.parse_element(str(tw.get("gamma", "1"))))
        return cls(algebra, scalar, phi, sigma, bool(obj.get("mirror", False)), twist)


def evaluate(s: BijectionRecipe, a: NcPoly) -> NcPoly:
    return s.evaluate(a)


def evaluate_inverse(s: BijectionRecipe, b: NcPoly) -> NcPoly:
    return s.evaluate_inverse(b)


def derivative_star(s: BijectionRecipe, a: NcPoly, b: NcPoly) -> NcPoly:
    return s.derivative_star(a, b)


def derivative_bot(s: BijectionRecipe, a: NcPoly, b: NcPoly) -> NcPoly:
    return s.derivative_bot(a, b)


def derivative_circ(s: BijectionRecipe, xi, a: NcPoly) -> NcPoly:
    return s.derivative_circ(xi, a)


def conjugation_action(s: BijectionRecipe, nu: Endo) -> Endo:
    return s.conjugate(nu)


def conjugation_closure_failure(
    s: BijectionRecipe, nu: Endo, rng: Random, samples: int = 10, inverse: bool = False
) -> NcPoly | None:
    """An element a where s nu s^-1 (or s^-1 nu s) differs from its generator-image extension."""
    phi_nu = s.conjugate_inverse(nu) if inverse else s.conjugate(nu)
    for _ in range(samples):
        a = random_poly(s.algebra, rng, 4)
        direct = (
            s.evaluate_inverse(nu.apply(s.evaluate(a))) if inverse else s.evaluate(nu.apply(s.evaluate_inverse(a)))
        )
        if direct != phi_nu.apply(a):
            return a
    return None


def build_twist(g: NcPoly, gamma, phi: RingAutomorphism | None, algebra: AlgebraDescriptor, mirror: bool = False) -> BijectionRecipe:
    """The bijection that fixes monomials, applies phi to scalars and twists addition by gamma g."""
    R = algebra.ring
    if g.algebra != twist_algebra(algebra):
        g = g.to_algebra(twist_algebra(algebra))
    return BijectionRecipe(algebra, R.one, phi, None, mirror, TwistData(g, R.coerce(gamma)))


# --- verification reports -------------------------------------------------------------

@dataclass
class IsomorphismReport:
    samples: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"samples": self.samples, "ok": self.ok, "failures": self.failures}


def verify_derivative_isomorphism(
    s: BijectionRecipe,
    samples: int = 200,
    rng: Random | None = None,
    evaluator: Callable[[NcPoly], NcPoly] | None = None,
) -> IsomorphismReport:
    """Check s(ab) = s(a)*s(b), s(a+b) = s(a)(+)s(b), s(xi a) = xi o s(a) on random samples.

    ``evaluator`` replaces ``s`` on the left-hand sides (for negative controls).
    """
    rng = rng or Random(0)
    ev = evaluator or s.evaluate
    R = s.algebra.ring
    report = IsomorphismReport(samples)
    for _ in range(samples):
        a = random_poly(s.algebra, rng, 4)
        b = random_poly(s.algebra, rng, 4)
        xi = R.random(rng)
        sa, sb = s.evaluate(a), s.evaluate(b)
        checks = (
            ("product", ev(a * b), s.derivative_star(sa, sb)),
            ("sum", ev(a + b), s.derivative_bot(sa, sb)),
            ("scalar", ev(a.scale(xi)), s.derivative_circ(xi, sa)),
        )
        for name, lhs, rhs in checks:
            if lhs != rhs:
                report.failures.append({"identity": name, "a": print_poly(a), "b": print_poly(b), "xi": R.format(xi)})
    return report


def structure_failures(s: BijectionRecipe, samples: int, rng: Random) -> list[str]:
    """Compare the derived operations with their closed forms on random samples."""
    R = s.algebra.ring
    out = []
    for _ in range(samples):
        a = random_poly(s.algebra, rng, 4)
        b = random_poly(s.algebra, rng, 4)
        xi = R.random(rng)
        if s.derivative_star(a, b) != s.predicted_star(a, b):
            out.append(f"star({a}, {b})")
        if s.derivative_bot(a, b) != s.predicted_bot(a, b):
            out.append(f"bot({a}, {b})")
        if s.derivative_circ(xi, a) != s.predicted_circ(xi, a):
            out.append(f"circ({R.format(xi)}, {a})")
    return out


# --- classification ---------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    verdict: str
    ring_auto: str | None = None
    p: int | None = None
    witness: str | None = None

    def __str__(self):
        if self.verdict == SEMI_INNER:
            return f"SemiInner({self.ring_auto})"
        if self.verdict in (P_SEMI_INNER, P_MIRROR):
            return f"{self.verdict}({self.p})"
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "label": str(self), "ringAuto": self.ring_auto, "p": self.p, "witness": self.witness}


def additivity_defect(s: BijectionRecipe, r: int, a: NcPoly | None = None, b: NcPoly | None = None) -> NcPoly:
    """s^r(a + b) - s^r(a) - s^r(b), by default on the generators x1, x2."""
    x = s.algebra.gens()
    a = x[0] if a is None else a
    b = x[1] if b is None else b
    return s.power(r, a + b) - s.power(r, a) - s.power(r, b)


def classify(s: BijectionRecipe, confirm_samples: int = 20, rng: Random | None = None) -> Classification:
    phi = s.ring_auto
    if s.twist is None:
        if s.mirror:
            return Classification(MIRROR, phi.label)
        if phi.is_identity:
            return Classification(INNER, phi.label)
        return Classification(SEMI_INNER, phi.label)
    p = s.algebra.ring.characteristic
    if p == 0:
        raise TwistInCharZero("twisted recipes are only classified in positive characteristic")
    if s.algebra.n < 2:
        return Classification(OTHER, phi.label)
    d1 = additivity_defect(s, 1)
    witness = "x1 + x2" if not d1.is_zero() else None
    dp = additivity_defect(s, p)
    dp1 = additivity_defect(s, p - 1) if p > 1 else d1
    if not dp.is_zero() or (p - 1 >= 1 and dp1.is_zero()):
        return Classification(OTHER, phi.label, p, witness)
    rng = rng or Random(0)
    for _ in range(confirm_samples):
        a = random_poly(s.algebra, rng, 4)
        b = random_poly(s.algebra, rng, 4)
        if not additivity_defect(s, p, a, b).is_zero():
            return Classification(OTHER, phi.label, p, f"{a} ; {b}")
    return Classification(P_MIRROR if s.mirror else P_SEMI_INNER, phi.label, p, witness)


# --- twist powers ---------------------------------------------------------------------------

@dataclass
class TwistPowerReport:
    p: int
    coefficients: list[str]
    power_laws: list[bool]
    inverse_law: bool
    period_identity: bool
    samples_identity: bool

    @property
    def ok(self) -> bool:
        return all(self.power_laws) and self.inverse_law and self.period_identity and self.samples_identity

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "coefficients": self.coefficients,
            "powerLaws": self.power_laws,
            "inverseLaw": self.inverse_law,
            "periodIsIdentity": self.period_identity,
            "samplesFixed": self.samples_identity,
            "ok": self.ok,
        }


def twist_power_identity(s: BijectionRecipe, samples: int = 50, rng: Random | None = None) -> TwistPowerReport:
    """Check tau^r(a+b) = tau^r a + tau^r b + k_r g(tau^r a, tau^r b) for r = 1..p.

    Here k_1 = gamma and k_{r+1} = gamma + phi(k_r), so k_r = r gamma when phi
    fixes gamma.  Also checks tau^-1(a+b) = tau^-1 a + tau^-1 b - phi^-1(gamma) g(...)
    and that tau^p is the identity whenever phi^p is.
    """
    if s.twist is None:
        raise ValueError("recipe has no twist")
    if s.mirror or s.scalar != s.algebra.ring.one or s.base_auto != Endo.identity(s.algebra):
        raise ValueError("power identities are stated for the pure twist (no scalar, base change or mirror)")
    R = s.algebra.ring
    p = R.characteristic
    if p == 0:
        raise TwistInCharZero("twist powers are periodic only in positive characteristic")
    g = s.twist.g
    phi = s.ring_auto
    x = s.algebra.gens()
    a, b = x[0], x[1]
    k = s.twist.gamma
    coeffs, laws = [], []
    for r in range(1, p + 1):
        ta, tb = s.power(r, a), s.power(r, b)
        lhs = s.power(r, a + b)
        laws.append(lhs == ta + tb + substitute(g, [ta, tb]).scale(k))
        coeffs.append(R.format(k))
        k = R.add(s.twist.gamma, phi.apply(k))
    ia, ib = s.evaluate_inverse(a), s.evaluate_inverse(b)
    c_inv = R.neg(phi.inverse().apply(s.twist.gamma))
    inverse_law = s.evaluate_inverse(a + b) == ia + ib + substitute(g, [ia, ib]).scale(c_inv)
    period = phi.power_of(p).is_identity
    rng = rng or Random(0)
    fixed = True
    if period:
        for _ in range(samples):
            e = random_poly(s.algebra, rng, 6)
            if s.power(p, e) != e:
                fixed = False
                break
    return TwistPowerReport(p, coeffs, laws, inverse_law, period, fixed)


# --- sampling --------------------------------------------------------------------------------

def random_recipe(
    algebra: AlgebraDescriptor,
    rng: Random,
    kind: str = "semi-inner",
    twists: Sequence[NcPoly] = (),
) -> BijectionRecipe:
    """A random recipe of the requested kind.

    ``kind`` is one of ``inner``, ``semi-inner``, ``mirror``, ``twist`` or
    ``twist-mirror``; twisted kinds draw g from ``twists`` (cocycles in
    ``twist_algebra(algebra)``).
    """
    from .endo import random_automorphism

    R = algebra.ring
    units = R.units() if R.cardinality is not None else [R.one, R.neg(R.one)]
    c = rng.choice(units)
    autos = R.automorphisms()
    if kind == "inner":
        phi = autos[0]
    elif kind == "semi-inner" and len(autos) > 1:
        phi = rng.choice(autos[1:])
    else:
        phi = rng.choice(autos)
    sigma = random_automorphism(algebra, rng)
    twist = None
    if kind.startswith("twist"):
        if not twists:
            raise ValueError("twisted recipes need candidate cocycles")
        g = rng.choice(list(twists))
        gamma = rng.choice(units)
        twist = TwistData(g, gamma)
        if g.map_coefficients(phi.apply) != g:
            phi = autos[0]
    return BijectionRecipe(algebra, c, phi, sigma, kind.endswith("mirror"), twist)
