"""Noncommutative polynomials without constant term.

A polynomial is a finite map from words (tuples of 1-based generator
indices) to nonzero coefficient payloads.  Under ``Nilpotent(m)`` every word
of length >= m is zero, so such words are never stored.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from random import Random
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    AlgebraMismatch,
    GeneratorOutOfRange,
    LiteralSyntaxError,
)
from .matrix import ExactMatrix, kernel_basis
from .ring import Integers, QuadraticRing, Rationals, Ring, RingElement, parse_ring

Word = tuple[int, ...]

FREE = "free"
NILPOTENT = "nilpotent"
ZERO = "zero"


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Relatively free algebra on ``n`` generators over ``ring``.

    ``variety`` is ``"free"`` (free associative), ``"nilpotent"`` (class ``m``:
    products of ``m`` elements vanish) or ``"zero"`` (zero multiplication,
    the same as nilpotent of class 2).
    """

    ring: Ring
    n: int
    variety: str = FREE
    m: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one generator")
        if self.variety == ZERO:
            object.__setattr__(self, "m", 2)
        elif self.variety == NILPOTENT:
            if self.m is None or self.m < 2:
                raise ValueError("nilpotent algebras need m >= 2")
        elif self.variety == FREE:
            object.__setattr__(self, "m", None)
        else:
            raise ValueError(f"unknown variety {self.variety!r}")

    @classmethod
    def nilpotent(cls, ring: Ring, n: int, m: int) -> "AlgebraDescriptor":
        return cls(ring, n, NILPOTENT, m)

    @classmethod
    def free(cls, ring: Ring, n: int) -> "AlgebraDescriptor":
        return cls(ring, n, FREE)

    @property
    def bound(self) -> int | None:
        """Words of this length or longer vanish (None for the free algebra)."""
        return self.m

    @property
    def is_nilpotent(self) -> bool:
        return self.variety in (NILPOTENT, ZERO)

    def with_generators(self, n: int) -> "AlgebraDescriptor":
        return AlgebraDescriptor(self.ring, n, self.variety, self.m)

    def gen(self, i: int) -> "NcPoly":
        if not 1 <= i <= self.n:
            raise GeneratorOutOfRange(f"x{i} not among x1..x{self.n}")
        if self.m is not None and self.m <= 1:
            return self.zero()
        return NcPoly._raw(self, {(i,): self.ring.one})

    def gens(self) -> list["NcPoly"]:
        return [self.gen(i) for i in range(1, self.n + 1)]

    def zero(self) -> "NcPoly":
        return NcPoly._raw(self, {})

    def monomial(self, word: Sequence[int], coeff: Any = None) -> "NcPoly":
        c = self.ring.one if coeff is None else self.ring.coerce(coeff)
        return NcPoly(self, {tuple(word): c})

    def words(self, max_len: int | None = None) -> list[Word]:
        """All nonzero words in canonical order, up to ``max_len``."""
        top = max_len if max_len is not None else (self.m - 1 if self.m else None)
        if top is None:
            raise ValueError("free algebra: give max_len")
        if self.m is not None:
            top = min(top, self.m - 1)
        out: list[Word] = []
        for k in range(1, top + 1):
            out.extend(itertools.product(range(1, self.n + 1), repeat=k))
        return out

    def to_json(self) -> dict:
        out = {"ring": self.ring.spec, "n": self.n, "variety": self.variety}
        if self.variety == NILPOTENT:
            out["m"] = self.m
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "AlgebraDescriptor":
        ring = parse_ring(obj["ring"])
        variety = obj.get("variety", NILPOTENT if "m" in obj else FREE)
        return cls(ring, int(obj["n"]), variety, obj.get("m"))

    def __str__(self):
        tail = {FREE: "free", ZERO: "zero multiplication"}.get(self.variety, f"nilpotent class {self.m}")
        return f"{self.ring.spec}<x1..x{self.n}> ({tail})"

    def parse(self, text: str, strict: bool = True) -> "NcPoly":
        return parse_poly(text, self, strict=strict)


class NcPoly:
    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: AlgebraDescriptor, terms: Mapping[Sequence[int], Any] | None = None):
        R = algebra.ring
        clean: dict[Word, Any] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not w:
                raise ValueError("constant terms are not allowed (algebras without 1)")
            for i in w:
                if not 1 <= i <= algebra.n:
                    raise GeneratorOutOfRange(f"x{i} not among x1..x{algebra.n}")
            if algebra.m is not None and len(w) >= algebra.m:
                continue
            c = R.coerce(c)
            if w in clean:
                c = R.add(clean[w], c)
            clean[w] = c
        self.algebra = algebra
        self._terms = {w: c for w, c in clean.items() if not R.is_zero(c)}
        self._hash = None

    @classmethod
    def _raw(cls, algebra: AlgebraDescriptor, terms: dict[Word, Any]) -> "NcPoly":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    # --- inspection --------------------------------------------------------
    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def terms(self) -> list[tuple[Word, Any]]:
        """(word, payload) pairs in canonical length-then-lex order."""
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def term_dict(self) -> dict[Word, Any]:
        return dict(self._terms)

    def coefficient(self, word: Sequence[int]) -> RingElement:
        return RingElement(self.ring, self._terms.get(tuple(word), self.ring.zero))

    def support(self) -> frozenset[Word]:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Largest word length; -1 for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def low_degree(self) -> int:
        return min((len(w) for w in self._terms), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        lengths = {len(w) for w in self._terms}
        if k is None:
            return len(lengths) <= 1
        return lengths <= {k}

    def generators_used(self) -> set[int]:
        return {i for w in self._terms for i in w}

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return print_poly(self)

    def __repr__(self):
        return f"NcPoly({print_poly(self)!r})"

    # --- arithmetic --------------------------------------------------------
    def _same(self, other: "NcPoly"):
        if not isinstance(other, NcPoly):
            raise TypeError(f"expected NcPoly, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._same(other)
        R = self.ring
        out = dict(self._terms)
        for w, c in other._terms.items():
            if w in out:
                s = R.add(out[w], c)
                if R.is_zero(s):
                    del out[w]
                else:
                    out[w] = s
            else:
                out[w] = c
        return NcPoly._raw(self.algebra, out)

    def __neg__(self) -> "NcPoly":
        neg = self.ring.neg
        return NcPoly._raw(self.algebra, {w: neg(c) for w, c in self._terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def scale(self, xi) -> "NcPoly":
        R = self.ring
        xi = R.coerce(xi)
        if R.is_zero(xi):
            return self.algebra.zero()
        out = {}
        for w, c in self._terms.items():
            p = R.mul(xi, c)
            if not R.is_zero(p):
                out[w] = p
        return NcPoly._raw(self.algebra, out)

    def __rmul__(self, xi) -> "NcPoly":
        if isinstance(xi, (int, RingElement)) and not isinstance(xi, bool):
            return self.scale(xi)
        return NotImplemented

    def __mul__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            if isinstance(other, (int, RingElement)) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        self._same(other)
        return NcPoly._raw(self.algebra, _mul_terms(self.ring, self._terms, other._terms, self.algebra.m))

    def __pow__(self, e: int) -> "NcPoly":
        if e < 1:
            raise ValueError("only positive powers exist without a unit")
        out = self
        for _ in range(e - 1):
            out = out * self
        return out

    def map_coefficients(self, fn: Callable[[Any], Any]) -> "NcPoly":
        R = self.ring
        out = {}
        for w, c in self._terms.items():
            d = fn(c)
            if not R.is_zero(d):
                out[w] = d
        return NcPoly._raw(self.algebra, out)

    # --- grading ------------------------------------------------------------
    def homogeneous_component(self, k: int) -> "NcPoly":
        return NcPoly._raw(self.algebra, {w: c for w, c in self._terms.items() if len(w) == k})

    def linear_part(self) -> "NcPoly":
        return self.homogeneous_component(1)

    def higher_part(self) -> "NcPoly":
        return NcPoly._raw(self.algebra, {w: c for w, c in self._terms.items() if len(w) >= 2})

    # --- structural maps ------------------------------------------------------
    def mirror(self) -> "NcPoly":
        return NcPoly._raw(self.algebra, {w[::-1]: c for w, c in self._terms.items()})

    def substitute(self, images: Sequence["NcPoly"]) -> "NcPoly":
        return substitute(self, images)

    def to_algebra(self, target: AlgebraDescriptor) -> "NcPoly":
        """Reinterpret the same words in another algebra over the same ring."""
        if target.ring != self.ring:
            raise AlgebraMismatch("different coefficient rings")
        for w in self._terms:
            for i in w:
                if i > target.n:
                    raise GeneratorOutOfRange(f"x{i} not among x1..x{target.n}")
        m = target.m
        return NcPoly._raw(target, {w: c for w, c in self._terms.items() if m is None or len(w) < m})


def _mul_terms(R: Ring, a: Mapping[Word, Any], b: Mapping[Word, Any], m: int | None) -> dict[Word, Any]:
    if not a or not b:
        return {}
    by_len: dict[int, list[tuple[Word, Any]]] = {}
    for v, c in b.items():
        by_len.setdefault(len(v), []).append((v, c))
    out: dict[Word, Any] = {}
    add, mul, is_zero = R.add, R.mul, R.is_zero
    for u, cu in a.items():
        lu = len(u)
        for lv, items in by_len.items():
            if m is not None and lu + lv >= m:
                continue
            for v, cv in items:
                w = u + v
                p = mul(cu, cv)
                if w in out:
                    out[w] = add(out[w], p)
                else:
                    out[w] = p
    return {w: c for w, c in out.items() if not is_zero(c)}


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def mirror(f: NcPoly) -> NcPoly:
    return f.mirror()


def substitute(f: NcPoly, images: Sequence[NcPoly]) -> NcPoly:
    """Apply the algebra map x_i -> images[i-1] to ``f``.

    The result lives in the images' algebra.  Products are built word by word
    with a prefix cache, truncating in the target algebra.
    """
    src = f.algebra
    if len(images) != src.n:
        raise AlgebraMismatch(f"need {src.n} images, got {len(images)}")
    target = images[0].algebra
    for img in images:
        if img.algebra != target:
            raise AlgebraMismatch("images live in different algebras")
    if target.ring != src.ring:
        raise AlgebraMismatch("substitution across coefficient rings")
    if src.m is not None and (target.m is None or target.m > src.m):
        raise AlgebraMismatch("target algebra must be at least as nilpotent as the source")
    R = src.ring
    m = target.m
    img_terms = [img._terms for img in images]
    cache: dict[Word, dict[Word, Any]] = {}

    def value(w: Word) -> dict[Word, Any]:
        if w in cache:
            return cache[w]
        if len(w) == 1:
            res = img_terms[w[0] - 1]
        else:
            res = _mul_terms(R, value(w[:-1]), img_terms[w[-1] - 1], m)
        cache[w] = res
        return res

    out: dict[Word, Any] = {}
    add, mul = R.add, R.mul
    for w, c in f._terms.items():
        for v, d in value(w).items():
            p = mul(c, d)
            out[v] = add(out[v], p) if v in out else p
    return NcPoly._raw(target, {w: c for w, c in out.items() if not R.is_zero(c)})


# --- supports and distributivity -------------------------------------------

def _two_generator_check(f: NcPoly):
    extra = sorted(i for i in f.generators_used() if i > 2)
    if extra:
        raise GeneratorOutOfRange(f"expected a polynomial in x1, x2; found x{extra[0]}")


def _with_three(alg: AlgebraDescriptor) -> AlgebraDescriptor:
    return alg if alg.n >= 3 else alg.with_generators(3)


def support_after_shift(f: NcPoly, variable: int = 1) -> frozenset[Word]:
    """Support of f(x1 + x3, x2) (variable=1) or f(x1, x2 + x3) (variable=2)."""
    if variable not in (1, 2):
        raise GeneratorOutOfRange("shift variable must be 1 or 2")
    _two_generator_check(f)
    amb = _with_three(f.algebra)
    g = f.to_algebra(amb)
    images = amb.gens()
    images[variable - 1] = images[variable - 1] + amb.gen(3)
    return substitute(g, images).support()


def _distributivity_defects(P: NcPoly) -> tuple[NcPoly, NcPoly]:
    _two_generator_check(P)
    amb = _with_three(P.algebra)
    Q = P.to_algebra(amb)
    x = amb.gens()
    x1, x2, x3 = x[0], x[1], x[2]

    def at(a, b):
        return substitute(Q, [a, b, *x[2:]])

    first = at(x1 + x3, x2) - at(x1, x2) - at(x3, x2)
    second = at(x1, x2 + x3) - at(x1, x2) - at(x1, x3)
    return first, second


def is_distributive(P: NcPoly) -> bool:
    """P(a+b, c) = P(a, c) + P(b, c) and P(a, b+c) = P(a, b) + P(a, c), checked generically."""
    first, second = _distributivity_defects(P)
    return first.is_zero() and second.is_zero()


def classify_distributive(P: NcPoly) -> tuple[RingElement, RingElement] | None:
    """(alpha, beta) when P = alpha x1x2 + beta x2x1, else None."""
    if not is_distributive(P):
        return None
    if not P.support() <= {(1, 2), (2, 1)}:
        return None
    return P.coefficient((1, 2)), P.coefficient((2, 1))


def distributive_space(ring: Ring, max_degree: int) -> list[NcPoly]:
    """Basis of distributive polynomials in x1, x2 of degree <= max_degree.

    Solves the linear conditions on the coefficients of every word of length
    1..max_degree.  Over Z the basis spans the integer solutions.
    """
    alg2 = AlgebraDescriptor.free(ring, 2)
    amb = AlgebraDescriptor.free(ring, 3)
    unknowns = alg2.words(max_degree)
    x1, x2, x3 = amb.gens()
    columns = []
    for w in unknowns:
        mono = amb.monomial(w)
        d1 = (
            substitute(mono, [x1 + x3, x2, x3])
            - substitute(mono, [x1, x2, x3])
            - substitute(mono, [x3, x2, x3])
        )
        d2 = (
            substitute(mono, [x1, x2 + x3, x3])
            - substitute(mono, [x1, x2, x3])
            - substitute(mono, [x1, x3, x3])
        )
        col = {("a",) + k: c for k, c in d1._terms.items()}
        col.update({("b",) + k: c for k, c in d2._terms.items()})
        columns.append(col)
    row_keys = sorted({k for col in columns for k in col}, key=lambda k: (k[0], len(k), k[1:]))
    if not row_keys:
        return [alg2.monomial(w) for w in unknowns]
    table = tuple(tuple(col.get(k, ring.zero) for col in columns) for k in row_keys)
    A = ExactMatrix(ring, len(row_keys), len(unknowns), table)
    basis = []
    for v in kernel_basis(A):
        basis.append(NcPoly(alg2, {w: v.data[i][0] for i, w in enumerate(unknowns)}))
    return basis


# --- printing and parsing --------------------------------------------------

def _split_sign(R: Ring, c) -> tuple[bool, Any]:
    """Return (negative, magnitude) for rings with a natural sign."""
    if isinstance(R, (Integers, Rationals)):
        return (c < 0, -c if c < 0 else c)
    if isinstance(R, QuadraticRing):
        a, b = c
        if a < 0 or (a == 0 and b < 0):
            return True, (-a, -b)
    return False, c


def format_word(w: Word) -> str:
    return "*".join(f"x{i}" for i in w)


def print_poly(f: NcPoly) -> str:
    R = f.ring
    terms = f.terms()
    if not terms:
        return "0"
    parts = []
    for idx, (w, c) in enumerate(terms):
        negative, mag = _split_sign(R, c)
        if mag == R.one:
            body = format_word(w)
        else:
            lit = R.format(mag)
            if not R.is_simple_literal(mag):
                lit = f"({lit})"
            body = f"{lit}*{format_word(w)}"
        if idx == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{'-' if negative else '+'} {body}")
    return " ".join(parts)


class _PolyParser:
    def __init__(self, text: str, algebra: AlgebraDescriptor, strict: bool):
        self.s = re.sub(r"\s+", "", text)
        self.i = 0
        self.alg = algebra
        self.strict = strict
        self.R = algebra.ring

    def error(self, msg: str):
        raise LiteralSyntaxError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self) -> NcPoly:
        if not self.s:
            self.error("empty polynomial")
        terms: dict[Word, Any] = {}
        first = True
        while self.i < len(self.s) or first:
            sign = 1
            ch = self.peek()
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                self.i += 1
            elif not first:
                self.error("expected '+' or '-'")
            word, coeff = self.term()
            if sign < 0:
                coeff = self.R.neg(coeff)
            if word is None:
                if not self.R.is_zero(coeff):
                    raise LiteralSyntaxError("nonzero constant terms are not allowed (algebras without 1)")
            else:
                terms[word] = self.R.add(terms[word], coeff) if word in terms else coeff
            first = False
        return NcPoly(self.alg, terms)

    def coefficient_literal(self, text: str):
        return self.R.parse_element(text, strict=self.strict)

    def term(self) -> tuple[Word | None, Any]:
        ch = self.peek()
        if ch == "(":
            depth = 0
            start = self.i
            while self.i < len(self.s):
                c = self.s[self.i]
                depth += c == "("
                depth -= c == ")"
                self.i += 1
                if depth == 0:
                    break
            if depth:
                self.error("unbalanced parenthesis")
            coeff = self.coefficient_literal(self.s[start + 1 : self.i - 1])
            if self.peek() == "*":
                self.i += 1
                return self.word(), coeff
            return None, coeff
        if ch.isdigit():
            m = re.match(r"\d+", self.s[self.i :])
            self.i += m.end()
            coeff = self.coefficient_literal(m.group(0))
            if self.peek() == "*":
                self.i += 1
                return self.word(), coeff
            return None, coeff
        if ch == "x":
            return self.word(), self.R.one
        self.error("expected a coefficient or a generator")

    def word(self) -> Word:
        gens = []
        while True:
            m = re.match(r"x(\d+)", self.s[self.i :])
            if not m:
                self.error("expected a generator x<index>")
            k = int(m.group(1))
            if not 1 <= k <= self.alg.n:
                raise GeneratorOutOfRange(f"x{k} not among x1..x{self.alg.n}")
            gens.append(k)
            self.i += m.end()
            if self.peek() == "*" and self.s[self.i + 1 : self.i + 2] == "x":
                self.i += 1
                continue
            return tuple(gens)


def parse_poly(text: str, algebra: AlgebraDescriptor, strict: bool = True) -> NcPoly:
    """Parse the text grammar; ``strict`` rejects non-canonical coefficient literals."""
    return _PolyParser(text, algebra, strict).parse()


# --- sampling ----------------------------------------------------------------

def random_poly(
    algebra: AlgebraDescriptor,
    rng: Random,
    max_terms: int = 5,
    max_degree: int | None = None,
    bound: int = 5,
    min_degree: int = 1,
) -> NcPoly:
    top = max_degree if max_degree is not None else (algebra.m - 1 if algebra.m else 4)
    if algebra.m is not None:
        top = min(top, algebra.m - 1)
    if top < min_degree:
        return algebra.zero()
    R = algebra.ring
    terms: dict[Word, Any] = {}
    for _ in range(rng.randint(0, max_terms)):
        k = rng.randint(min_degree, top)
        w = tuple(rng.randint(1, algebra.n) for _ in range(k))
        terms[w] = R.random(rng, bound)
    return NcPoly(algebra, terms)


def random_homogeneous(algebra: AlgebraDescriptor, rng: Random, k: int, max_terms: int = 4, bound: int = 5) -> NcPoly:
    return random_poly(algebra, rng, max_terms, max_degree=k, bound=bound, min_degree=k)


def all_elements(algebra: AlgebraDescriptor) -> Iterator[NcPoly]:
    """Every element of a finite nilpotent algebra over a finite ring."""
    R = algebra.ring
    words = algebra.words()
    elems = list(R.elements())
    for coeffs in itertools.product(elems, repeat=len(words)):
        yield NcPoly(algebra, dict(zip(words, coeffs)))
