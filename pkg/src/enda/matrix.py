"""Dense exact matrices, rank-one factorization and matrix-unit conjugation.

Entries are stored as ring payloads (see :mod:`enda.ring`).  Positions are
0-based for ``matrix[i, j]``; families of matrix units are keyed by 1-based
index pairs ``(i, j)`` to match the usual ``E_ij`` notation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from random import Random
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    FactorizationFailed,
    LiteralSyntaxError,
    NotInvertible,
    NotMatrixUnits,
    RankNotOne,
    ShapeMismatch,
    UnsupportedRing,
)
from .ring import Integers, QuadraticRing, Ring, RingElement, Z, ZW


@dataclass(frozen=True)
class ExactMatrix:
    ring: Ring
    rows: int
    cols: int
    data: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeMismatch("matrices need at least one row and one column")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch("entry table does not match the declared shape")

    # --- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Any]]) -> "ExactMatrix":
        """Build from nested sequences of ints, RingElements, literals or payloads."""
        if not rows or not rows[0]:
            raise ShapeMismatch("empty matrix")
        data = []
        for row in rows:
            data.append(tuple(ring.parse_element(x) if isinstance(x, str) else ring.coerce(x) for x in row))
        return cls(ring, len(data), len(data[0]), tuple(data))

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(ring, rows, cols, tuple((ring.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ExactMatrix":
        return cls(
            ring, n, n,
            tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)),
        )

    @classmethod
    def unit(cls, ring: Ring, n: int, i: int, j: int) -> "ExactMatrix":
        """The matrix unit E_ij (1-based i, j)."""
        return cls(
            ring, n, n,
            tuple(
                tuple(ring.one if (r, c) == (i - 1, j - 1) else ring.zero for c in range(n))
                for r in range(n)
            ),
        )

    @classmethod
    def diagonal(cls, ring: Ring, diag: Sequence[Any]) -> "ExactMatrix":
        n = len(diag)
        return cls(
            ring, n, n,
            tuple(tuple(diag[i] if i == j else ring.zero for j in range(n)) for i in range(n)),
        )

    # --- access --------------------------------------------------------------
    def __getitem__(self, pos: tuple[int, int]) -> RingElement:
        i, j = pos
        return RingElement(self.ring, self.data[i][j])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entries(self) -> list:
        """Row-major list of payloads."""
        return [x for row in self.data for x in row]

    def to_lists(self) -> list[list[RingElement]]:
        return [[RingElement(self.ring, x) for x in row] for row in self.data]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for row in self.data for x in row)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.data)))

    def column(self, j: int) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.rows, 1, tuple((row[j],) for row in self.data))

    def row(self, i: int) -> "ExactMatrix":
        return ExactMatrix(self.ring, 1, self.cols, (self.data[i],))

    # --- arithmetic ------------------------------------------------------------
    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError("expected an ExactMatrix")
        if other.ring != self.ring:
            from .errors import WrongRing

            raise WrongRing(f"matrices over {self.ring} and {other.ring}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return ExactMatrix(
            self.ring, self.rows, self.cols,
            tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
        )

    def __neg__(self) -> "ExactMatrix":
        neg = self.ring.neg
        return ExactMatrix(self.ring, self.rows, self.cols, tuple(tuple(neg(a) for a in r) for r in self.data))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        R = self.ring
        add, mul, zero = R.add, R.mul, R.zero
        cols = list(zip(*other.data))
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a != zero and b != zero:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return ExactMatrix(R, self.rows, other.cols, tuple(out))

    __mul__ = __matmul__

    def scale(self, c) -> "ExactMatrix":
        c = self.ring.coerce(c)
        mul = self.ring.mul
        return ExactMatrix(self.ring, self.rows, self.cols, tuple(tuple(mul(c, a) for a in r) for r in self.data))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    # --- literals --------------------------------------------------------------
    def to_literal(self) -> list[list]:
        """JSON-ready nested list: ints over Z, element literals otherwise."""
        if isinstance(self.ring, Integers):
            return [list(r) for r in self.data]
        return [[self.ring.format(x) for x in r] for r in self.data]

    def __str__(self):
        return json.dumps(self.to_literal())

    def __repr__(self):
        return f"ExactMatrix({self.ring.spec}, {self})"


def parse_matrix(text: str | list, ring: Ring) -> ExactMatrix:
    """Parse a JSON array-of-arrays of element literals (ints allowed)."""
    if isinstance(text, str):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LiteralSyntaxError(f"matrix literal is not valid JSON: {exc}") from None
    else:
        rows = text
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise LiteralSyntaxError("matrix literal must be a non-empty array of non-empty arrays")
    if len({len(r) for r in rows}) != 1:
        raise LiteralSyntaxError("matrix rows have different lengths")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise LiteralSyntaxError(f"bad matrix entry {x!r}")
            row.append(ring.parse_element(x) if isinstance(x, str) else ring.from_int(x))
        out.append(row)
    return ExactMatrix.from_rows(ring, out)


# --- rank and determinant --------------------------------------------------

def _bareiss(A: ExactMatrix) -> tuple[int, list[list], int]:
    """Fraction-free forward elimination.  Returns (rank, reduced table, swap parity)."""
    R = A.ring
    M = [list(r) for r in A.data]
    zero, one = R.zero, R.one
    rows, cols = A.rows, A.cols
    prev = one
    r = 0
    swaps = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c] != zero), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            swaps += 1
        prc = M[r][c]
        for i in range(r + 1, rows):
            mic = M[i][c]
            for j in range(c + 1, cols):
                num = R.sub(R.mul(prc, M[i][j]), R.mul(mic, M[r][j]))
                q = R.exact_div(num, prev)
                if q is None:  # cannot happen in an integral domain
                    raise ArithmeticError("Bareiss division was not exact")
                M[i][j] = q
            M[i][c] = zero
        prev = prc
        r += 1
    return r, M, swaps


def rank(A: ExactMatrix) -> int:
    """Rank over the fraction field, by fraction-free elimination."""
    return _bareiss(A)[0]


def det(A: ExactMatrix) -> RingElement:
    if A.rows != A.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    R = A.ring
    r, M, swaps = _bareiss(A)
    if r < A.rows:
        return RingElement(R, R.zero)
    d = M[-1][-1]
    return RingElement(R, R.neg(d) if swaps % 2 else d)


def minor(A: ExactMatrix, i: int, j: int) -> ExactMatrix:
    return ExactMatrix(
        A.ring, A.rows - 1, A.cols - 1,
        tuple(tuple(x for c, x in enumerate(row) if c != j) for r, row in enumerate(A.data) if r != i),
    )


def adjugate(A: ExactMatrix) -> ExactMatrix:
    R = A.ring
    n = A.rows
    if n != A.cols:
        raise ShapeMismatch("adjugate of a non-square matrix")
    if n == 1:
        return ExactMatrix(R, 1, 1, ((R.one,),))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det(minor(A, j, i)).payload
            row.append(R.neg(c) if (i + j) % 2 else c)
        out.append(tuple(row))
    return ExactMatrix(R, n, n, tuple(out))


def _gauss_jordan_inverse(A: ExactMatrix) -> ExactMatrix:
    R = A.ring
    n = A.rows
    M = [list(r) + [R.one if i == j else R.zero for j in range(n)] for i, r in enumerate(A.data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != R.zero), None)
        if piv is None:
            raise NotInvertible("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = R.inv(M[c][c])
        M[c] = [R.mul(inv, x) for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != R.zero:
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[c])]
    return ExactMatrix(R, n, n, tuple(tuple(r[n:]) for r in M))


def inverse(A: ExactMatrix) -> ExactMatrix:
    """Inverse over K itself; raises NotInvertible unless det A is a unit."""
    if A.rows != A.cols:
        raise ShapeMismatch("inverse of a non-square matrix")
    R = A.ring
    if R.is_field:
        return _gauss_jordan_inverse(A)
    d = det(A).payload
    if not R.is_unit(d):
        raise NotInvertible(f"determinant {R.format(d)} is not a unit of {R.spec}")
    return adjugate(A).scale(R.inv(d))


def is_invertible(A: ExactMatrix) -> bool:
    return A.rows == A.cols and A.ring.is_unit(det(A).payload)


# --- linear systems ----------------------------------------------------------

def _rref(R: Ring, M: list[list]) -> tuple[list[list], list[int]]:
    rows = len(M)
    cols = len(M[0]) if M else 0
    M = [list(r) for r in M]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c] != R.zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = R.inv(M[r][c])
        M[r] = [R.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != R.zero:
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def _field_kernel(R: Ring, M: list[list], cols: int) -> list[list]:
    if not M:
        return [[R.one if i == j else R.zero for i in range(cols)] for j in range(cols)]
    red, pivots = _rref(R, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [R.zero] * cols
        v[f] = R.one
        for r, pc in enumerate(pivots):
            v[pc] = R.neg(red[r][f])
        basis.append(v)
    return basis


def _hermite_columns(M: list[list[int]], cols: int) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Column-style Hermite reduction over Z: returns (H, U, pivots) with M U = H.

    U is unimodular; the columns of H after the last pivot are zero, so the
    matching columns of U form a Z-basis of the integer kernel.
    """
    H = [list(r) for r in M]
    U = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def col_op(dst: int, src: int, q: int):
        # column dst -= q * column src
        for row in H:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def swap(a: int, b: int):
        for row in H:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    pivots = []
    k = 0
    for r in range(len(H)):
        if k == cols:
            break
        while True:
            nz = [j for j in range(k, cols) if H[r][j] != 0]
            if not nz:
                break
            best = min(nz, key=lambda j: abs(H[r][j]))
            if best != k:
                swap(best, k)
            if len(nz) == 1:
                break
            for j in range(k + 1, cols):
                if H[r][j]:
                    col_op(j, k, H[r][j] // H[r][k])
        if any(H[r][j] for j in range(k, cols)):
            if H[r][k] < 0:
                for row in H:
                    row[k] = -row[k]
                for row in U:
                    row[k] = -row[k]
            pivots.append((r, k))
            k += 1
    return H, U, pivots


def kernel_basis(A: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {x : A x = 0}; over Z a lattice basis of the integer kernel."""
    R = A.ring
    if R.is_field:
        vecs = _field_kernel(R, [list(r) for r in A.data], A.cols)
    elif isinstance(R, Integers):
        _, U, pivots = _hermite_columns([list(r) for r in A.data], A.cols)
        vecs = [[U[i][j] for i in range(A.cols)] for j in range(len(pivots), A.cols)]
        vecs = [_primitive_sign(v) for v in vecs]
    else:
        raise UnsupportedRing(f"kernel computation over {R.spec} is not supported")
    return [ExactMatrix(R, A.cols, 1, tuple((x,) for x in v)) for v in vecs]


def _primitive_sign(v: list[int]) -> list[int]:
    first = next((x for x in v if x), 0)
    return [-x for x in v] if first < 0 else v


def linear_solve(A: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """One solution x of A x = b over K, or None when there is none."""
    R = A.ring
    if b.ring != R or b.cols != 1 or b.rows != A.rows:
        raise ShapeMismatch("right-hand side must be a column with matching rows")
    rhs = [r[0] for r in b.data]
    if R.is_field:
        aug = [list(r) + [y] for r, y in zip(A.data, rhs)]
        red, pivots = _rref(R, aug)
        if A.cols in pivots:
            return None
        x = [R.zero] * A.cols
        for r, pc in enumerate(pivots):
            x[pc] = red[r][A.cols]
        return ExactMatrix(R, A.cols, 1, tuple((v,) for v in x))
    if isinstance(R, Integers):
        H, U, pivots = _hermite_columns([list(r) for r in A.data], A.cols)
        y = [0] * A.cols
        pivot_of = dict(pivots)
        assigned = 0
        for r in range(A.rows):
            s = sum(H[r][j] * y[j] for j in range(assigned))
            if r in pivot_of:
                k = pivot_of[r]
                q, rem = divmod(rhs[r] - s, H[r][k])
                if rem:
                    return None
                y[k] = q
                assigned = k + 1
            elif s != rhs[r]:
                return None
        x = [sum(U[i][j] * y[j] for j in range(A.cols)) for i in range(A.cols)]
        return ExactMatrix(R, A.cols, 1, tuple((v,) for v in x))
    raise UnsupportedRing(f"linear solving over {R.spec} is not supported")


# --- rank-one factorization ----------------------------------------------------

@dataclass(frozen=True)
class Rank1Factorization:
    column: ExactMatrix
    row: ExactMatrix

    def product(self) -> ExactMatrix:
        return self.column @ self.row

    def to_json(self) -> dict:
        return {"column": self.column.to_literal(), "row": self.row.to_literal()}


@dataclass(frozen=True)
class NonFactorizationCertificate:
    """Records the exhausted search space proving no column x row product exists."""

    matrix: ExactMatrix
    search_bound: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_literal(), "searchBound": self.search_bound}


def _first_nonzero(A: ExactMatrix) -> tuple[int, int]:
    for i, row in enumerate(A.data):
        for j, x in enumerate(row):
            if not A.ring.is_zero(x):
                return i, j
    raise RankNotOne("zero matrix has rank 0")


def _assemble(R: Ring, col: Sequence, row: Sequence) -> Rank1Factorization:
    return Rank1Factorization(
        ExactMatrix(R, len(col), 1, tuple((c,) for c in col)),
        ExactMatrix(R, 1, len(row), (tuple(row),)),
    )


def r1mf_factorize(A: ExactMatrix) -> Rank1Factorization | NonFactorizationCertificate:
    """Write a rank-one matrix as column x row, or certify that this is impossible."""
    rk = rank(A)
    if rk != 1:
        raise RankNotOne(f"matrix has rank {rk}")
    R = A.ring
    r, j0 = _first_nonzero(A)
    if R.is_field:
        row = A.data[r]
        piv = row[j0]
        col = [R.exact_div(A.data[i][j0], piv) for i in range(A.rows)]
        out = _assemble(R, col, row)
    elif isinstance(R, Integers):
        row = list(A.data[r])
        g = 0
        for x in row:
            g = math.gcd(g, x)
        if row[j0] < 0:
            g = -g
        row = [x // g for x in row]
        col = []
        for i in range(A.rows):
            q, rem = divmod(A.data[i][j0], row[j0])
            if rem:
                raise ArithmeticError("rank-one integer matrix failed Gauss's lemma")
            col.append(q)
        out = _assemble(R, col, row)
    elif isinstance(R, QuadraticRing):
        return _r1mf_quadratic(A, r, j0)
    else:
        raise UnsupportedRing(f"no rank-one factorization path for {R.spec}")
    if out.product() != A:
        raise ArithmeticError("rank-one factorization failed to reconstruct the input")
    return out


def _r1mf_quadratic(A: ExactMatrix, r: int, j0: int):
    """Exhaustive search over Z[sqrt(-5)].

    In any factorization A = c d the entry c_r divides every a_rj, so its norm
    divides the gcd G of the norms of the nonzero entries of row r.  There are
    finitely many such elements; each fixes d = (a_rj / c_r) and then
    c_i = a_{i j0} / d_{j0}.  Trying all of them covers every factorization.
    """
    R: QuadraticRing = A.ring
    G = 0
    for x in A.data[r]:
        if x != R.zero:
            G = math.gcd(G, R.norm(x))
    candidates = R.elements_with_norm_dividing(G)
    tried = []
    for cr in candidates:
        tried.append(R.format(cr))
        d = [R.exact_div(x, cr) for x in A.data[r]]
        if any(q is None for q in d):
            continue
        col = [R.exact_div(A.data[i][j0], d[j0]) for i in range(A.rows)]
        if any(q is None for q in col):
            continue
        out = _assemble(R, col, d)
        if out.product() == A:
            return out
    return NonFactorizationCertificate(
        A,
        {
            "method": "norm-divisor enumeration",
            "pivotRow": r + 1,
            "pivotColumn": j0 + 1,
            "normGcd": G,
            "candidates": tried,
            "exhausted": True,
        },
    )


def has_column_row_form(A: ExactMatrix) -> bool:
    """True when A (any shape, e.g. 2x2) is zero or a column x row product over K."""
    if A.is_zero():
        return True
    if rank(A) != 1:
        return False
    return isinstance(r1mf_factorize(A), Rank1Factorization)


# --- matrix units ----------------------------------------------------------

def elementary_family(ring: Ring, n: int) -> dict[tuple[int, int], ExactMatrix]:
    return {(i, j): ExactMatrix.unit(ring, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)}


def _family_size(P: Mapping[tuple[int, int], ExactMatrix]) -> int:
    n = math.isqrt(len(P))
    keys = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    if n * n != len(P) or set(P) != keys:
        raise NotMatrixUnits("family must be indexed by all pairs (i, j) with 1 <= i, j <= n")
    return n


def check_matrix_units(P: Mapping[tuple[int, int], ExactMatrix]) -> int:
    """Verify P_ij != 0 and P_ij P_mk = delta_jm P_ik; returns n."""
    n = _family_size(P)
    ring = P[1, 1].ring
    for key, M in P.items():
        if M.ring != ring or M.shape != (n, n):
            raise NotMatrixUnits(f"P{key} is not an {n}x{n} matrix over {ring.spec}")
        if M.is_zero():
            raise NotMatrixUnits(f"P{key} is zero")
    zero = ExactMatrix.zero(ring, n)
    for (i, j), Pij in P.items():
        for (m, k), Pmk in P.items():
            expected = P[i, k] if j == m else zero
            if Pij @ Pmk != expected:
                raise NotMatrixUnits(f"P{(i, j)} P{(m, k)} breaks the matrix-unit relations")
    return n


def conjugate_matrix_units(P: Mapping[tuple[int, int], ExactMatrix]) -> ExactMatrix:
    """Return invertible rho with rho P_ij rho^-1 = E_ij for every i, j."""
    n = check_matrix_units(P)
    R = P[1, 1].ring

    # probe vector u with P_11 u != 0; its images u_i = P_i1 P_11 u must be independent
    u_index = next(j for j in range(n) if not P[1, 1].column(j).is_zero())
    u1 = P[1, 1].column(u_index)
    probe = [P[i, 1] @ u1 for i in range(1, n + 1)]
    span = ExactMatrix(R, n, n, tuple(tuple(v.data[r][0] for v in probe) for r in range(n)))
    if rank(span) != n:
        raise NotMatrixUnits("the vectors P_i1 u do not span the whole space")

    cols, rows = [], []
    for i in range(1, n + 1):
        f = r1mf_factorize(P[i, i])
        if isinstance(f, NonFactorizationCertificate):
            raise FactorizationFailed(f"P{(i, i)} has no column x row factorization over {R.spec}")
        cols.append(f.column)
        rows.append(f.row)
    A = ExactMatrix(R, n, n, tuple(tuple(c.data[r][0] for c in cols) for r in range(n)))
    B = ExactMatrix(R, n, n, tuple(rw.data[0] for rw in rows))
    if B @ A != ExactMatrix.identity(R, n):
        raise NotMatrixUnits("diagonal idempotents do not split the identity")

    # d_ij = b_i P_ij a^j; rescale by the units d_1i
    d1 = []
    for i in range(1, n + 1):
        d = (rows[0] @ P[1, i] @ cols[i - 1]).data[0][0]
        if not R.is_unit(d):
            raise NotMatrixUnits(f"scaling factor d_1{i} is not a unit")
        d1.append(d)
    rho = ExactMatrix.diagonal(R, d1) @ B
    rho_inv = A @ ExactMatrix.diagonal(R, [R.inv(d) for d in d1])
    if rho @ rho_inv != ExactMatrix.identity(R, n):
        raise ArithmeticError("conjugating matrix is not invertible")
    for (i, j), M in P.items():
        if rho @ M @ rho_inv != ExactMatrix.unit(R, n, i, j):
            raise ArithmeticError(f"conjugation failed on P{(i, j)}")
    return rho


def random_unimodular(ring: Ring, n: int, rng: Random, steps: int = 12, bound: int = 3) -> ExactMatrix:
    """Product of random elementary transvections and unit scalings."""
    rows = [list(r) for r in ExactMatrix.identity(ring, n).data]
    units = ring.units() if ring.cardinality is not None else [ring.one, ring.neg(ring.one)]
    for _ in range(steps):
        if n > 1:
            i, j = rng.sample(range(n), 2)
            c = ring.random(rng, bound)
            rows[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            k = rng.randrange(n)
            u = rng.choice(units)
            rows[k] = [ring.mul(u, a) for a in rows[k]]
        if n > 1 and rng.random() < 0.2:
            i, j = rng.sample(range(n), 2)
            rows[i], rows[j] = rows[j], rows[i]
    return ExactMatrix(ring, n, n, tuple(tuple(r) for r in rows))


# --- the Z[sqrt(-5)] counterexample -------------------------------------------

def dedekind_m() -> ExactMatrix:
    return ExactMatrix.from_rows(ZW, [["1+w", "-2"], ["-2", "1-w"]])


def dedekind_a() -> ExactMatrix:
    return ExactMatrix.from_rows(ZW, [["w", "-2"], ["-2", "-w"]])


def dedekind_c() -> ExactMatrix:
    return ExactMatrix.from_rows(ZW, [["1+w", "2"], ["3", "1-w"]])


def _divide_matrix(M: ExactMatrix, d) -> ExactMatrix | None:
    R = M.ring
    out = []
    for row in M.data:
        new = []
        for x in row:
            q = R.exact_div(x, d)
            if q is None:
                return None
            new.append(q)
        out.append(tuple(new))
    return ExactMatrix(R, M.rows, M.cols, tuple(out))


def dedekind_report() -> dict:
    """Exact verification of the 2x2 conjugation example over Z[sqrt(-5)]."""
    R = ZW
    m, a, c = dedekind_m(), dedekind_a(), dedekind_c()
    items = []

    det_m = det(m).payload
    adj_m = adjugate(m)
    expected_adj = ExactMatrix.from_rows(R, [["1-w", "2"], ["2", "1+w"]])
    items.append({
        "id": 1,
        "claim": "det m = 2 and m^-1 = (1/2) [[1-w, 2], [2, 1+w]]",
        "holds": det_m == R.from_int(2) and adj_m == expected_adj and m @ adj_m == ExactMatrix.identity(R, 2).scale(2),
        "witness": {"m": m.to_literal(), "det": R.format(det_m), "adjugate": adj_m.to_literal()},
    })

    conj = {}
    ok = True
    for i in (1, 2):
        for j in (1, 2):
            q = _divide_matrix(adj_m @ ExactMatrix.unit(R, 2, i, j) @ m, det_m)
            ok = ok and q is not None
            conj[f"E_{i}_{j}"] = None if q is None else q.to_literal()
    items.append({
        "id": 2,
        "claim": "m^-1 E_ij m has entries in K for all four matrix units",
        "holds": ok,
        "witness": conj,
    })

    m2 = m @ m
    det_a = det(a).payload
    a_inv = inverse(a) if R.is_unit(det_a) else None
    items.append({
        "id": 3,
        "claim": "m^2 = 2a with a = [[w, -2], [-2, -w]] and det a = 1",
        "holds": m2 == a.scale(2) and det_a == R.one and a_inv is not None and a @ a_inv == ExactMatrix.identity(R, 2),
        "witness": {
            "m^2": m2.to_literal(),
            "a": a.to_literal(),
            "det a": R.format(det_a),
            "a^-1": None if a_inv is None else a_inv.to_literal(),
        },
    })

    # alpha^2 = +-2 forces norm(alpha) = 2; list every element of norm <= 2
    pool = R.elements_of_norm_at_most(2)
    squares = {R.format(x): R.format(R.mul(x, x)) for x in pool}
    targets = {R.from_int(2), R.from_int(-2)}
    hits = [R.format(x) for x in pool if R.mul(x, x) in targets]
    items.append({
        "id": 4,
        "claim": "no alpha in K satisfies alpha^2 = 2 or alpha^2 = -2",
        "holds": not hits,
        "witness": {"normBound": 2, "searched": squares, "solutions": hits},
    })

    rk = rank(c)
    result = r1mf_factorize(c)
    items.append({
        "id": 5,
        "claim": "rank c = 1 but c is not a column x row product over K",
        "holds": rk == 1 and isinstance(result, NonFactorizationCertificate),
        "witness": {
            "c": c.to_literal(),
            "rank": rk,
            "certificate": result.to_json() if isinstance(result, NonFactorizationCertificate) else None,
        },
    })
    return {"ring": R.spec, "items": items, "allHold": all(it["holds"] for it in items)}
