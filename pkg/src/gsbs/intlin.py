"""Exact integer linear algebra over Z.

Dense arbitrary-precision matrices with determinants, Smith normal form with
accumulated unimodular transforms, integral linear solving, and cokernel
coset representatives. Everything here is exact; no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import SchemaError
from .jsonutil import decode_int, encode_int


@dataclass(frozen=True)
class IntMatrix:
    """Row-major dense integer matrix with positive dimensions."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        if nrows == 0:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return IntMatrix(nrows, ncols, tuple(int(v) for r in rows for v in r))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * v for v in self.entries))

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        n, k, m = self.rows, self.cols, other.cols
        out = [0] * (n * m)
        for i in range(n):
            base = i * k
            for t in range(k):
                a = self.entries[base + t]
                if a:
                    ob = t * m
                    for j in range(m):
                        out[i * m + j] += a * other.entries[ob + j]
        return IntMatrix(n, m, tuple(out))

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(self.entry(i, j) * v[j] for j in range(self.cols)) for i in range(self.rows)
        )


def _det_cofactor(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    sign = 1
    for j in range(n):
        a = rows[0][j]
        if a:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += sign * a * _det_cofactor(minor)
        sign = -sign
    return total


def _det_bareiss(rows: list[list[int]]) -> int:
    # Fraction-free elimination: all divisions below are exact.
    n = len(rows)
    b = [list(r) for r in rows]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if b[t][t] == 0:
            for i in range(t + 1, n):
                if b[i][t] != 0:
                    b[t], b[i] = b[i], b[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                b[i][j] = (b[i][j] * b[t][t] - b[i][t] * b[t][j]) // prev
            b[i][t] = 0
        prev = b[t][t]
    return sign * b[n - 1][n - 1]


def det(a: IntMatrix) -> int:
    """Exact determinant; cofactor expansion for order <= 4, Bareiss above."""
    if not a.is_square:
        raise ValueError("determinant requires a square matrix")
    rows = a.to_rows()
    if a.rows <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def adjugate(a: IntMatrix) -> IntMatrix:
    """Classical adjugate: adjugate(a) @ a == det(a) * identity."""
    if not a.is_square:
        raise ValueError("adjugate requires a square matrix")
    n = a.rows
    if n == 1:
        return IntMatrix.from_rows([[1]])
    rows = a.to_rows()
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
            # transposed cofactor
            out[j][i] = (-1) ** (i + j) * _det_cofactor(minor)
    return IntMatrix.from_rows(out)


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1; exact, stays integral."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return adjugate(a).scale(d)


@dataclass(frozen=True)
class SnfDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal.

    Diagonal entries are nonnegative, each divides the next, zeros trail.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        k = min(self.D.rows, self.D.cols)
        return tuple(self.D.entry(i, i) for i in range(k))


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    """Smith normal form with accumulated unimodular row/column transforms."""
    m, n = a.rows, a.cols
    b = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def row_sub(i: int, j: int, q: int) -> None:  # row i -= q * row j
        if q:
            b[i] = [x - q * y for x, y in zip(b[i], b[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(j: int, k: int, q: int) -> None:  # col j -= q * col k
        if q:
            for r in b:
                r[j] -= q * r[k]
            for r in v:
                r[j] -= q * r[k]

    def row_swap(i: int, j: int) -> None:
        b[i], b[j] = b[j], b[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for r in b:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        # move an entry of least absolute value into the pivot slot
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                val = abs(b[i][j])
                if val and (best is None or val < best):
                    best = val
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])

        while True:
            dirty = False
            for i in range(t + 1, m):
                if b[i][t]:
                    q = b[i][t] // b[t][t]
                    row_sub(i, t, q)
                    if b[i][t]:  # remainder strictly smaller: promote it
                        row_swap(i, t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if b[t][j]:
                    q = b[t][j] // b[t][t]
                    col_sub(j, t, q)
                    if b[t][j]:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            break

        # pivot must divide the rest of its submatrix for the chain d1 | d2 | ...
        p = b[t][t]
        coupled = False
        for i in range(t + 1, m):
            if any(x % p for x in b[i][t + 1 :]):
                row_sub(t, i, -1)
                coupled = True
                break
        if coupled:
            continue
        t += 1

    for i in range(min(m, n)):
        if b[i][i] < 0:
            b[i] = [-x for x in b[i]]
            u[i] = [-x for x in u[i]]

    dec = SnfDecomposition(
        IntMatrix.from_rows(u), IntMatrix.from_rows(b), IntMatrix.from_rows(v)
    )
    if (dec.U @ a) @ dec.V != dec.D:
        raise AssertionError("smith normal form transform bookkeeping broke")
    return dec


def solve_integral(a: IntMatrix, rhs: Sequence[int]) -> tuple[int, ...] | None:
    """Integral solution k of a @ k == rhs, or None when none exists.

    Requires a square nonsingular matrix; the solution is then unique over Q
    and returned exactly when it lies in Z^n.
    """
    if not a.is_square:
        raise ValueError("solve_integral requires a square matrix")
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    if any(d == 0 for d in diag):
        raise ValueError("matrix is singular")
    ub = snf.U.matvec(rhs)
    z = []
    for val, d in zip(ub, diag):
        if val % d:
            return None
        z.append(val // d)
    k = snf.V.matvec(z)
    if a.matvec(k) != tuple(rhs):
        raise AssertionError("integral solve verification failed")
    return k


def cokernel_representatives(a: IntMatrix) -> list[tuple[int, ...]]:
    """Coset representatives of Z^n / (a @ Z^n) for square nonsingular a.

    Exactly |det a| vectors, pairwise incongruent modulo the column lattice,
    in a fixed deterministic order.
    """
    if not a.is_square:
        raise ValueError("cokernel_representatives requires a square matrix")
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    if any(d == 0 for d in diag):
        raise ValueError("matrix is singular (cokernel is infinite)")
    uinv = inverse_unimodular(snf.U)
    reps = []
    for w in itertools.product(*(range(d) for d in reversed(diag))):
        reps.append(uinv.matvec(tuple(reversed(w))))
    return reps


def cokernel_index(a: IntMatrix, snf: SnfDecomposition, y: Sequence[int]) -> tuple[int, ...]:
    """Residue coordinates of y in the cokernel of a: (U @ y) mod diag."""
    uy = snf.U.matvec(y)
    return tuple(val % d for val, d in zip(uy, snf.diagonal()))


def matrix_to_json(a: IntMatrix) -> list[list[Any]]:
    return [[encode_int(v) for v in a.row(i)] for i in range(a.rows)]


def matrix_from_json(doc: Any, what: str = "matrix") -> IntMatrix:
    if not isinstance(doc, list) or not doc:
        raise SchemaError(f"{what}: expected a nonempty array of rows")
    rows = []
    width = None
    for r in doc:
        if not isinstance(r, list) or not r:
            raise SchemaError(f"{what}: each row must be a nonempty array")
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise SchemaError(f"{what}: ragged rows")
        rows.append([decode_int(v, what) for v in r])
    return IntMatrix.from_rows(rows)
