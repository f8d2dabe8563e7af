"""Exact coefficient domains: Z, Q, F_p, F_{p^k} and Z[sqrt(-5)].

A ring descriptor owns the arithmetic; elements are stored as plain
immutable payloads (``int``, ``Fraction``, tuples) so that polynomial and
matrix code can work on them without wrapper overhead.  ``RingElement``
is the user-facing wrapper with operator overloading.

Payloads:

* ``Integers``       -- ``int``
* ``Rationals``      -- ``fractions.Fraction`` (always reduced, positive denominator)
* ``PrimeField``     -- ``int`` in ``[0, p)``
* ``GaloisField``    -- ``tuple`` of ``k`` residues, lowest degree first
* ``QuadraticRing``  -- ``(a, b)`` meaning ``a + b*w`` with ``w = sqrt(-5)``
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from random import Random
from typing import Any, Iterator

from .errors import (
    DivisionByZero,
    LiteralSyntaxError,
    NonCanonicalCoefficient,
    NotAUnit,
    NotIrreducible,
    UnsupportedDomain,
    WrongRing,
)

INFINITE = None

_INT_RE = re.compile(r"^[+-]?\d+$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def _parse_int(text: str) -> int:
    text = text.strip()
    if not _INT_RE.match(text):
        raise LiteralSyntaxError(f"expected an integer literal, got {text!r}")
    return int(text)


class Ring:
    """Common interface of every coefficient domain."""

    kind: str = ""
    is_field: bool = False

    # --- descriptor data -------------------------------------------------
    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    @property
    def cardinality(self) -> int | None:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec

    # --- payload arithmetic ----------------------------------------------
    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, k: int):
        raise NotImplementedError

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def exact_div(self, a, b):
        """Return ``q`` with ``a == q*b`` or ``None``; raises on ``b == 0``."""
        raise NotImplementedError

    def gcd(self, a, b):
        raise UnsupportedDomain(f"{self.spec} is not a gcd domain")

    def coerce(self, x):
        """Turn an ``int``, ``RingElement`` or raw payload into a payload."""
        if isinstance(x, RingElement):
            if x.ring != self:
                raise WrongRing(f"element of {x.ring} used in {self}")
            return x.payload
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return self.from_int(x)
        return self.validate(x)

    def validate(self, payload):
        raise NotImplementedError

    # --- literals ----------------------------------------------------------
    def parse_element(self, text: str, strict: bool = False):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def is_simple_literal(self, a) -> bool:
        """True when the printed form needs no parentheses as a coefficient."""
        return bool(re.fullmatch(r"\d+", self.format(a)))

    # --- enumeration / sampling -------------------------------------------
    def elements(self) -> Iterator:
        raise UnsupportedDomain(f"{self.spec} is infinite")

    def random(self, rng: Random, bound: int = 5):
        raise NotImplementedError

    def random_nonzero(self, rng: Random, bound: int = 5):
        while True:
            a = self.random(rng, bound)
            if not self.is_zero(a):
                return a

    def units(self) -> list:
        """All units when finitely many exist."""
        raise UnsupportedDomain(f"{self.spec} has infinitely many units")

    def automorphisms(self) -> list["RingAutomorphism"]:
        return [RingAutomorphism(self, "identity")]

    def __call__(self, x) -> "RingElement":
        if isinstance(x, str):
            return RingElement(self, self.parse_element(x))
        return RingElement(self, self.coerce(x))


@dataclass(frozen=True)
class Integers(Ring):
    kind = "Integers"

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def cardinality(self):
        return INFINITE

    @property
    def spec(self) -> str:
        return "Z"

    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return k

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise NotAUnit(f"{a} is not a unit of Z")
        return a

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Z")
        q, r = divmod(a, b)
        return q if r == 0 else None

    def gcd(self, a, b):
        return math.gcd(a, b)

    def validate(self, payload):
        if not isinstance(payload, int) or isinstance(payload, bool):
            raise WrongRing(f"{payload!r} is not an integer")
        return payload

    def parse_element(self, text, strict=False):
        return _parse_int(text)

    def format(self, a):
        return str(a)

    def random(self, rng, bound=5):
        return rng.randint(-bound, bound)

    def units(self):
        return [1, -1]


@dataclass(frozen=True)
class Rationals(Ring):
    kind = "Rationals"
    is_field = True

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def cardinality(self):
        return INFINITE

    @property
    def spec(self) -> str:
        return "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return Fraction(k)

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return 1 / a

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def gcd(self, a, b):
        return Fraction(0) if a == 0 and b == 0 else Fraction(1)

    def validate(self, payload):
        if isinstance(payload, Fraction):
            return payload
        raise WrongRing(f"{payload!r} is not a Fraction")

    def parse_element(self, text, strict=False):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)\s*(?:/\s*(\d+))?", text)
        if not m:
            raise LiteralSyntaxError(f"bad rational literal {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise DivisionByZero("zero denominator")
        if strict and m.group(2) and math.gcd(num, den) != 1:
            raise NonCanonicalCoefficient(f"{text!r} is not in lowest terms")
        return Fraction(num, den)

    def format(self, a):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    kind = "PrimeField"
    is_field = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def cardinality(self):
        return self.p

    @property
    def spec(self) -> str:
        return f"F{self.p}"

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def from_int(self, k):
        return k % self.p

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        if b == 0:
            raise DivisionByZero(f"division by zero in {self.spec}")
        return (a * pow(b, -1, self.p)) % self.p

    def gcd(self, a, b):
        return 0 if a == 0 and b == 0 else 1

    def validate(self, payload):
        if isinstance(payload, int) and 0 <= payload < self.p:
            return payload
        raise WrongRing(f"{payload!r} is not a residue mod {self.p}")

    def parse_element(self, text, strict=False):
        k = _parse_int(text)
        if strict and not 0 <= k < self.p:
            raise NonCanonicalCoefficient(f"{k} is not a canonical residue mod {self.p}")
        return k % self.p

    def format(self, a):
        return str(a)

    def elements(self):
        return iter(range(self.p))

    def random(self, rng, bound=5):
        return rng.randrange(self.p)

    def units(self):
        return list(range(1, self.p))


# --- F_p[t] helpers (coefficient lists, lowest degree first) ----------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bc) % p
        _trim(a)
    return _trim(q), a


def _format_t_poly(coeffs, var: str = "t") -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


def _parse_t_poly(text: str, p: int, var: str = "t") -> list[int]:
    s = text.replace(" ", "")
    if not s:
        raise LiteralSyntaxError("empty polynomial literal")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise LiteralSyntaxError(f"bad polynomial literal {text!r}")
    coeffs: dict[int, int] = {}
    term_re = re.compile(rf"^(\d+)?(\*)?(?:({var})(?:\^(\d+))?)?$")
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        m = term_re.match(piece[1:])
        if not m or (m.group(1) is None and m.group(3) is None):
            raise LiteralSyntaxError(f"bad term {piece!r} in {text!r}")
        if m.group(2) and (m.group(1) is None or m.group(3) is None):
            raise LiteralSyntaxError(f"bad term {piece!r} in {text!r}")
        if m.group(1) and m.group(3) and not m.group(2):
            raise LiteralSyntaxError(f"missing '*' in {piece!r}")
        c = int(m.group(1)) if m.group(1) else 1
        e = 0 if m.group(3) is None else int(m.group(4) or 1)
        coeffs[e] = (coeffs.get(e, 0) + sign * c) % p
    deg = max(coeffs)
    out = [coeffs.get(i, 0) for i in range(deg + 1)]
    return _trim(out)


def is_irreducible_mod_p(modulus: list[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= k/2."""
    f = _trim(list(modulus))
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            _, r = _poly_divmod(f, list(tail) + [1], p)
            if not r:
                return False
    return True


@dataclass(frozen=True)
class GaloisField(Ring):
    """F_p[t]/(modulus) with a monic irreducible modulus, lowest degree first."""

    p: int
    modulus: tuple[int, ...]
    kind = "GaloisField"
    is_field = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        mod = _trim([c % self.p for c in self.modulus])
        if len(mod) < 2:
            raise NotIrreducible("modulus must have degree >= 1")
        lead_inv = pow(mod[-1], -1, self.p)
        mod = [(c * lead_inv) % self.p for c in mod]
        if not is_irreducible_mod_p(mod, self.p):
            raise NotIrreducible(f"{_format_t_poly(mod)} factors over F{self.p}")
        object.__setattr__(self, "modulus", tuple(mod))

    @property
    def k(self) -> int:
        return len(self.modulus) - 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def cardinality(self):
        return self.p ** self.k

    @property
    def spec(self) -> str:
        return f"F{self.cardinality}=F{self.p}[t]/({_format_t_poly(self.modulus)})"

    @cached_property
    def zero(self):
        return (0,) * self.k

    @cached_property
    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def _reduce(self, c: list[int]) -> tuple[int, ...]:
        p, mod, k = self.p, self.modulus, self.k
        c = [x % p for x in c]
        for top in range(len(c) - 1, k - 1, -1):
            lead = c[top]
            if lead:
                shift = top - k
                for i in range(k + 1):
                    c[shift + i] = (c[shift + i] - lead * mod[i]) % p
        c = c[:k] + [0] * (k - len(c))
        return tuple(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def from_int(self, k):
        return (k % self.p,) + (0,) * (self.k - 1)

    def is_unit(self, a):
        return a != self.zero

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero("zero has no inverse")
        return self.pow(a, self.cardinality - 2)

    def exact_div(self, a, b):
        if b == self.zero:
            raise DivisionByZero(f"division by zero in {self.spec}")
        return self.mul(a, self.inv(b))

    def gcd(self, a, b):
        return self.zero if a == self.zero and b == self.zero else self.one

    def validate(self, payload):
        if (
            isinstance(payload, tuple)
            and len(payload) == self.k
            and all(isinstance(c, int) and 0 <= c < self.p for c in payload)
        ):
            return payload
        raise WrongRing(f"{payload!r} is not an element of {self.spec}")

    def parse_element(self, text, strict=False):
        coeffs = _parse_t_poly(text, self.p)
        if len(coeffs) > self.k:
            if strict:
                raise NonCanonicalCoefficient(f"{text!r} has degree >= {self.k}")
            return self._reduce(coeffs)
        return tuple(coeffs) + (0,) * (self.k - len(coeffs))

    def format(self, a):
        return _format_t_poly(a)

    def elements(self):
        return iter(itertools.product(range(self.p), repeat=self.k))

    def random(self, rng, bound=5):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def units(self):
        return [a for a in self.elements() if a != self.zero]

    def automorphisms(self):
        return [RingAutomorphism(self, "frobenius", j) for j in range(self.k)]


@dataclass(frozen=True)
class QuadraticRing(Ring):
    """Z[w] with w^2 = d; only d = -5 is supported."""

    d: int = -5
    kind = "QuadraticRing"

    def __post_init__(self):
        if self.d != -5:
            raise UnsupportedDomain("only Z[sqrt(-5)] is supported")

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def cardinality(self):
        return INFINITE

    @property
    def spec(self) -> str:
        return "Z[sqrt(-5)]"

    zero = (0, 0)
    one = (1, 0)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def from_int(self, k):
        return (k, 0)

    def conj(self, a):
        return (a[0], -a[1])

    def norm(self, a) -> int:
        return a[0] * a[0] - self.d * a[1] * a[1]

    def is_unit(self, a):
        return self.norm(a) == 1

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{self.format(a)} is not a unit of {self.spec}")
        return self.conj(a)

    def exact_div(self, a, b):
        if b == self.zero:
            raise DivisionByZero("division by zero in Z[sqrt(-5)]")
        n = self.norm(b)
        num = self.mul(a, self.conj(b))
        if num[0] % n or num[1] % n:
            return None
        return (num[0] // n, num[1] // n)

    def validate(self, payload):
        if (
            isinstance(payload, tuple)
            and len(payload) == 2
            and all(isinstance(c, int) and not isinstance(c, bool) for c in payload)
        ):
            return payload
        raise WrongRing(f"{payload!r} is not an element of {self.spec}")

    def parse_element(self, text, strict=False):
        s = text.replace(" ", "")
        if not s:
            raise LiteralSyntaxError("empty element literal")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"[+-][^+-]+", s)
        if "".join(pieces) != s:
            raise LiteralSyntaxError(f"bad quadratic literal {text!r}")
        a = b = 0
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            body = piece[1:]
            m = re.fullmatch(r"(?:(\d+)\*)?w", body)
            if m:
                b += sign * (int(m.group(1)) if m.group(1) else 1)
            elif re.fullmatch(r"\d+", body):
                a += sign * int(body)
            else:
                raise LiteralSyntaxError(f"bad term {piece!r} in {text!r}")
        return (a, b)

    def format(self, x):
        a, b = x
        if b == 0:
            return str(a)
        wpart = f"{abs(b)}*w"
        if a == 0:
            return wpart if b > 0 else f"-{wpart}"
        return f"{a}{'+' if b > 0 else '-'}{wpart}"

    def random(self, rng, bound=5):
        return (rng.randint(-bound, bound), rng.randint(-bound, bound))

    def units(self):
        return [(1, 0), (-1, 0)]

    def automorphisms(self):
        return [RingAutomorphism(self, "identity"), RingAutomorphism(self, "conjugation")]

    def elements_of_norm_at_most(self, bound: int) -> list[tuple[int, int]]:
        """Every a + b*w with a^2 + 5 b^2 <= bound (a finite set)."""
        out = []
        bmax = math.isqrt(bound // 5) if bound >= 0 else -1
        for b in range(-bmax, bmax + 1):
            rest = bound - 5 * b * b
            amax = math.isqrt(rest)
            for a in range(-amax, amax + 1):
                out.append((a, b))
        return out

    def elements_with_norm_dividing(self, n: int) -> list[tuple[int, int]]:
        if n == 0:
            raise ValueError("every element's norm divides 0")
        return [x for x in self.elements_of_norm_at_most(abs(n)) if self.norm(x) and n % self.norm(x) == 0]


Z = Integers()
QQ = Rationals()
ZW = QuadraticRing()


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: Ring
    payload: Any

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise WrongRing(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.payload
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.add(self.payload, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(self.payload, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(o, self.payload))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.mul(self.payload, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.payload))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.payload, e))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        if isinstance(other, int) and not isinstance(other, bool):
            return self.payload == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __bool__(self):
        return not self.ring.is_zero(self.payload)

    def __str__(self):
        return self.ring.format(self.payload)

    def __repr__(self):
        return f"RingElement({self.ring.spec}, {self.ring.format(self.payload)})"

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.payload)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inv(self.payload))


@dataclass(frozen=True)
class RingAutomorphism:
    """Identity, a Frobenius power t -> t^(p^j), or conjugation of Z[sqrt(-5)]."""

    ring: Ring
    kind: str = "identity"
    power: int = 0

    def __post_init__(self):
        if self.kind == "identity":
            object.__setattr__(self, "power", 0)
        elif self.kind == "frobenius":
            if not isinstance(self.ring, (GaloisField, PrimeField)):
                raise WrongRing("Frobenius needs a finite field")
            k = self.ring.k if isinstance(self.ring, GaloisField) else 1
            j = self.power % k
            if j == 0:
                object.__setattr__(self, "kind", "identity")
            object.__setattr__(self, "power", j)
        elif self.kind == "conjugation":
            if not isinstance(self.ring, QuadraticRing):
                raise WrongRing("conjugation needs Z[sqrt(-5)]")
            object.__setattr__(self, "power", 1)
        else:
            raise ValueError(f"unknown automorphism kind {self.kind!r}")

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"

    def apply(self, a):
        if self.kind == "identity":
            return a
        if self.kind == "conjugation":
            return self.ring.conj(a)
        return self.ring.pow(a, self.ring.p ** self.power)

    def __call__(self, x):
        if isinstance(x, RingElement):
            return RingElement(self.ring, self.apply(self.ring.coerce(x)))
        return self.apply(x)

    @property
    def order(self) -> int:
        if self.kind == "identity":
            return 1
        if self.kind == "conjugation":
            return 2
        return self.ring.k // math.gcd(self.ring.k, self.power)

    def inverse(self) -> "RingAutomorphism":
        if self.kind == "frobenius":
            return RingAutomorphism(self.ring, "frobenius", -self.power % self.ring.k)
        return self

    def compose(self, other: "RingAutomorphism") -> "RingAutomorphism":
        """``self`` after ``other``."""
        if self.ring != other.ring:
            raise WrongRing("automorphisms of different rings")
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        if self.kind == "conjugation":
            return RingAutomorphism(self.ring, "identity")
        return RingAutomorphism(self.ring, "frobenius", self.power + other.power)

    def power_of(self, r: int) -> "RingAutomorphism":
        out = RingAutomorphism(self.ring, "identity")
        for _ in range(r % self.order):
            out = self.compose(out)
        return out

    @property
    def label(self) -> str:
        if self.kind == "frobenius":
            return f"frobenius^{self.power}"
        return self.kind

    @classmethod
    def from_label(cls, ring: Ring, label: str) -> "RingAutomorphism":
        label = label.strip()
        if label == "identity":
            return cls(ring, "identity")
        if label == "conjugation":
            return cls(ring, "conjugation")
        m = re.fullmatch(r"frobenius(?:\^(\d+))?", label)
        if m:
            return cls(ring, "frobenius", int(m.group(1) or 1))
        raise LiteralSyntaxError(f"unknown ring automorphism {label!r}")


_RING_RE = re.compile(r"^F(\d+)=F(\d+)\[t\]/\((.+)\)$")


def parse_ring(spec: str) -> Ring:
    """Parse ``Z | Q | F<p> | F<p^k>=F<p>[t]/(<poly>) | Z[sqrt(-5)]``."""
    s = spec.replace(" ", "")
    if s == "Z":
        return Z
    if s == "Q":
        return QQ
    if s == "Z[sqrt(-5)]":
        return ZW
    m = re.fullmatch(r"F(\d+)", s)
    if m:
        p = int(m.group(1))
        if not _is_prime(p):
            raise LiteralSyntaxError(f"F{p}: {p} is not prime (give an explicit modulus for prime powers)")
        return PrimeField(p)
    m = _RING_RE.match(s)
    if m:
        q, p = int(m.group(1)), int(m.group(2))
        if not _is_prime(p):
            raise LiteralSyntaxError(f"base field F{p} is not prime")
        coeffs = _parse_t_poly(m.group(3), p)
        k = len(coeffs) - 1
        if k < 1:
            raise LiteralSyntaxError("modulus must have positive degree")
        if q != p ** k:
            raise LiteralSyntaxError(f"F{q} does not match F{p}[t]/(degree {k})")
        if k == 1:
            return PrimeField(p)
        return GaloisField(p, tuple(coeffs))
    raise LiteralSyntaxError(f"unrecognised ring literal {spec!r}")


def norm(x: RingElement) -> RingElement:
    """a^2 + 5 b^2 for x = a + b*sqrt(-5), as an element of Z."""
    if not isinstance(x.ring, QuadraticRing):
        raise WrongRing(f"norm is defined on Z[sqrt(-5)], not {x.ring}")
    return RingElement(Z, x.ring.norm(x.payload))


def is_unit(x: RingElement) -> bool:
    return x.ring.is_unit(x.payload)


def gcd(x: RingElement, y: RingElement) -> RingElement:
    if x.ring != y.ring:
        raise WrongRing("gcd of elements from different rings")
    return RingElement(x.ring, x.ring.gcd(x.payload, y.payload))


def exact_div(x: RingElement, y: RingElement) -> RingElement | None:
    if x.ring != y.ring:
        raise WrongRing("division of elements from different rings")
    q = x.ring.exact_div(x.payload, y.payload)
    return None if q is None else RingElement(x.ring, q)
