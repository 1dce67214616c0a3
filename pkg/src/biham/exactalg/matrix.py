"""Dense matrices over exact rationals.

Construction is cheap and immutable; rank and nullspace clear denominators
row by row and hand the integer rows to the fraction-free elimination
kernel, so no rational arithmetic happens inside the O(n^3) loop.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .kernels import row_echelon_ff
from .rational import rat


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions, len == rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, tuple(rat(x) for r in rows for x in r))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, vec):
        """Matrix times column vector (tuple of rationals)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((self.row(i)[k] * vec[k] for k in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_skew(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == -self[j, i] for i in range(self.rows) for j in range(i, self.cols))

    def congruence(self, p: "Matrix") -> "Matrix":
        """p^T @ self @ p (change of basis for a bilinear pairing)."""
        return p.transpose() @ self @ p

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def _integer_rows(self) -> list:
        """Rows scaled to integers (each row by the lcm of its denominators)."""
        out = []
        for i in range(self.rows):
            row = self.row(i)
            scale = 1
            for x in row:
                d = x.denominator
                scale = scale // gcd(scale, d) * d
            out.append([int(x * scale) for x in row])
        return out

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        rank, _ = row_echelon_ff(self._integer_rows())
        return rank

    def nullspace(self) -> list:
        """Basis of the right null space, as tuples of Fractions.

        Each basis vector has one free coordinate set to 1 and is scaled to
        coprime integers for readability; ``self.apply(v) == 0`` exactly.
        """
        if self.cols == 0:
            return []
        if self.rows == 0:
            basis = []
            for f in range(self.cols):
                v = [Fraction(0)] * self.cols
                v[f] = Fraction(1)
                basis.append(tuple(v))
            return basis
        m = self._integer_rows()
        rank, pivot_cols = row_echelon_ff(m)
        pivot_set = set(pivot_cols)
        free_cols = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free_cols:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r in range(rank - 1, -1, -1):
                pc = pivot_cols[r]
                s = sum((Fraction(m[r][j]) * v[j] for j in range(pc + 1, self.cols)), Fraction(0))
                v[pc] = -s / m[r][pc]
            basis.append(_integerize(v))
        return basis

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]"
                         for i in range(self.rows))


def _integerize(vec) -> tuple:
    scale = 1
    for x in vec:
        d = x.denominator
        scale = scale // gcd(scale, d) * d
    ints = [int(x * scale) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def mat_rank(m: Matrix) -> int:
    """Rank over the rationals (fraction-free elimination, deterministic)."""
    return m.rank()


def mat_nullspace(m: Matrix) -> list:
    """Basis of the right null space; empty for full column rank."""
    return m.nullspace()


def stack_rows(vectors) -> Matrix:
    """Matrix whose rows are the given vectors (gradients, differentials...)."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return Matrix.zero(0, 0)
    return Matrix.from_rows(vectors)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows + b.rows, a.cols + b.cols
    ent = []
    for i in range(n):
        for j in range(m):
            if i < a.rows and j < a.cols:
                ent.append(a[i, j])
            elif i >= a.rows and j >= a.cols:
                ent.append(b[i - a.rows, j - a.cols])
            else:
                ent.append(Fraction(0))
    return Matrix(n, m, tuple(ent))
