"""Classification of pairs of skew-symmetric pairings.

A pair (A, B) of skew matrices decomposes uniquely into odd-dimensional
Kronecker blocks K_{2k-1} (detected through the minimal indices of the
polynomial kernel of lam*A + B) and even-dimensional Jordan blocks J_{2k,mu}
(detected through paired elementary divisors of the Smith form).  All
computations are exact and deterministic: genericity is certified by
evaluating coranks at n+1 rational parameter values plus the reversed
pencil, which a degree argument makes sufficient.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InternalInconsistency, NotPureKronecker,
                     NotSkewCanonical, ValidationError)
from .exactalg import (Matrix, UPoly, block_diag, factor_monic, rat, rat_str,
                       smith_invariant_factors, stack_rows)

INF = "inf"


@dataclass(frozen=True)
class SkewPencil:
    """Two skew-symmetric n x n rational matrices, read as lam*A + B."""

    n: int
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.rows != self.n or self.B.rows != self.n:
            raise ValidationError("pencil matrices must be n x n")
        if not self.A.is_skew() or not self.B.is_skew():
            raise ValidationError("pencil matrices must be skew-symmetric")

    @classmethod
    def from_rows(cls, a_rows, b_rows) -> "SkewPencil":
        a = Matrix.from_rows(a_rows)
        b = Matrix.from_rows(b_rows)
        return cls(a.rows, a, b)

    def at(self, lam) -> Matrix:
        return self.A.scale(rat(lam)) + self.B

    def swap(self) -> "SkewPencil":
        return SkewPencil(self.n, self.B, self.A)

    def congruence(self, p: Matrix) -> "SkewPencil":
        return SkewPencil(self.n, self.A.congruence(p), self.B.congruence(p))

    def direct_sum(self, other: "SkewPencil") -> "SkewPencil":
        return SkewPencil(self.n + other.n,
                          block_diag(self.A, other.A), block_diag(self.B, other.B))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": [[rat_str(x) for x in self.A.row(i)] for i in range(self.n)],
            "B": [[rat_str(x) for x in self.B.row(i)] for i in range(self.n)],
        }

    @classmethod
    def from_json(cls, data) -> "SkewPencil":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = data["n"]
            a = [[rat(x) for x in row] for row in data["A"]]
            b = [[rat(x) for x in row] for row in data["B"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad pencil JSON: {exc}") from exc
        pencil = cls.from_rows(a, b)
        if pencil.n != n:
            raise ValidationError("pencil dimension field disagrees with matrices")
        return pencil


@dataclass(frozen=True)
class Block:
    """One indecomposable summand.

    Kronecker blocks store k (dimension 2k-1).  Jordan blocks store k
    (dimension 2k*deg) and the irreducible divisor: either a monic
    irreducible polynomial in the pencil parameter (finite eigenvalue) or
    the reversed-chart divisor for the eigenvalue at infinity of the
    parameter, which carries the classical label mu = 0.
    """

    kind: str                      # "kronecker" | "jordan"
    k: int
    divisor: tuple | None = None   # ("finite", UPoly monic irreducible) | ("at_lam_infinity",)

    def dimension(self) -> int:
        if self.kind == "kronecker":
            return 2 * self.k - 1
        return 2 * self.k * self.divisor_degree()

    def divisor_degree(self) -> int:
        if self.divisor is None:
            return 0
        if self.divisor[0] == "at_lam_infinity":
            return 1
        return self.divisor[1].degree()

    def mu_label(self):
        """The classical eigenvalue label, defined for linear divisors only.

        A finite-chart divisor lam - lam0 carries mu = -1/lam0 (mu = inf
        when lam0 = 0); the divisor visible only in the reversed chart
        carries mu = 0.
        """
        if self.kind != "jordan":
            return None
        if self.divisor[0] == "at_lam_infinity":
            return Fraction(0)
        q = self.divisor[1]
        if q.degree() != 1:
            return None
        lam0 = -q[0]
        return INF if lam0 == 0 else -1 / lam0

    def label(self) -> str:
        if self.kind == "kronecker":
            return f"K{2 * self.k - 1}"
        mu = self.mu_label()
        if mu is not None:
            mu_s = INF if mu == INF else rat_str(mu)
            return f"J{self.dimension()}(mu={mu_s})"
        return f"J{self.dimension()}(divisor={self.divisor[1]})"

    def sort_key(self):
        if self.kind == "kronecker":
            return (0, self.k, "")
        return (1, self.k, str(self.divisor))


@dataclass(frozen=True)
class PencilType:
    """Multiset of blocks; the decomposition certificate."""

    n: int
    blocks: tuple

    def __post_init__(self):
        if sum(b.dimension() for b in self.blocks) != self.n:
            raise InternalInconsistency("block dimensions do not sum to n")

    def kronecker_blocks(self) -> tuple:
        return tuple(b for b in self.blocks if b.kind == "kronecker")

    def jordan_blocks(self) -> tuple:
        return tuple(b for b in self.blocks if b.kind == "jordan")

    def is_pure_kronecker(self) -> bool:
        return not self.jordan_blocks()

    def kronecker_dims(self) -> tuple:
        return tuple(sorted((2 * b.k - 1 for b in self.kronecker_blocks()), reverse=True))

    def label(self) -> str:
        return "{" + ", ".join(b.label() for b in
                               sorted(self.blocks, key=Block.sort_key)) + "}"

    def __eq__(self, other):
        return (isinstance(other, PencilType) and self.n == other.n
                and sorted(self.blocks, key=Block.sort_key)
                == sorted(other.blocks, key=Block.sort_key))

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.blocks, key=Block.sort_key))))


@dataclass(frozen=True)
class KernelFamily:
    """Polynomial kernel vectors, one per Kronecker block.

    vectors[t] is a tuple of UPoly entries w(lam) with (lam*A + B) w(lam)
    identically zero and degree equal to the t-th minimal index.
    """

    pencil: SkewPencil
    vectors: tuple
    degrees: tuple = field(default=())


def generic_corank(p: SkewPencil) -> int:
    """Minimal corank of lam*A + B over the projective parameter line.

    Deterministic: coranks at lam in {0, ..., n} plus the reversed pencil
    (the matrix A alone); a nonzero minor of size at most n vanishes at no
    more than n sample values, so the minimum over the samples is exact.
    """
    n = p.n
    coranks = [n - p.at(lam).rank() for lam in range(n + 1)]
    coranks.append(n - p.A.rank())
    return min(coranks)


def corank_profile(p: SkewPencil) -> dict:
    """Corank at each sampled parameter value (including the reversed pencil)."""
    prof = {str(lam): p.n - p.at(lam).rank() for lam in range(p.n + 1)}
    prof[INF] = p.n - p.A.rank()
    return prof


def _convolution_nullity(p: SkewPencil, d: int) -> tuple:
    """Nullity of the degree-d polynomial-kernel system and a basis.

    A vector v(lam) = v_0 + ... + v_d lam^d satisfies (lam*A + B) v = 0 iff
    B v_0 = 0, A v_{i-1} + B v_i = 0 for i = 1..d, and A v_d = 0; the
    stacked block matrix has n(d+2) rows and n(d+1) columns.
    """
    n = p.n
    rows = []
    for block_row in range(d + 2):
        for i in range(n):
            row = [Fraction(0)] * (n * (d + 1))
            if block_row <= d:       # B acting on v_{block_row}
                for j in range(n):
                    row[block_row * n + j] += p.B[i, j]
            if block_row >= 1 and block_row - 1 <= d:   # A acting on v_{block_row-1}
                for j in range(n):
                    row[(block_row - 1) * n + j] += p.A[i, j]
            rows.append(row)
    big = Matrix.from_rows(rows)
    return big.nullspace()


def minimal_indices(p: SkewPencil) -> list:
    """Right minimal indices of the pencil, one per Kronecker block.

    Computed from the nullity sequence nu_d of the staircase systems: the
    number of indices equal to e is (nu_e - nu_{e-1}) - (nu_{e-1} - nu_{e-2}).
    """
    r = generic_corank(p)
    if r == 0:
        return []
    indices = []
    nu_prev2 = 0
    nu_prev = 0
    found = 0
    for d in range(p.n + 1):
        nu = len(_convolution_nullity(p, d))
        count = (nu - nu_prev) - (nu_prev - nu_prev2)
        indices.extend([d] * count)
        found = nu - nu_prev
        nu_prev2, nu_prev = nu_prev, nu
        if found == r and len(indices) == r:
            break
    if len(indices) != r:
        raise InternalInconsistency(
            f"found {len(indices)} minimal indices for generic corank {r}")
    return sorted(indices)


def _pencil_upoly_rows(p: SkewPencil, reversed_chart: bool = False) -> list:
    rows = []
    for i in range(p.n):
        row = []
        for j in range(p.n):
            if reversed_chart:
                row.append(UPoly([p.A[i, j], p.B[i, j]]))   # A + mu B
            else:
                row.append(UPoly([p.B[i, j], p.A[i, j]]))   # B + lam A
        rows.append(row)
    return rows


def jordan_part(p: SkewPencil) -> list:
    """Jordan blocks as a sorted list of Block objects.

    Finite eigenvalues come from the Smith form of lam*A + B, the
    eigenvalue visible only at lam = infinity from the Smith form of
    A + mu B at mu = 0.  Elementary divisors of a skew pencil pair up; odd
    multiplicity signals corrupted input.
    """
    divisors: dict = {}
    for factor in smith_invariant_factors(_pencil_upoly_rows(p)):
        for irr, mult in factor_monic(factor):
            key = ("finite", irr)
            divisors[(key, mult)] = divisors.get((key, mult), 0) + 1
    mu = UPoly.x()
    for factor in smith_invariant_factors(_pencil_upoly_rows(p, reversed_chart=True)):
        power = 0
        while not factor.is_zero() and factor[0] == 0:
            factor = factor.exact_div(mu)
            power += 1
        if power:
            key = ("at_lam_infinity",)
            divisors[(key, power)] = divisors.get((key, power), 0) + 1
    blocks = []
    for (key, mult), count in sorted(divisors.items(),
                                     key=lambda kv: (kv[0][1], str(kv[0][0]))):
        if count % 2 != 0:
            raise NotSkewCanonical(
                f"elementary divisor {key} with exponent {mult} occurs {count} times")
        blocks.extend([Block("jordan", mult, key)] * (count // 2))
    return blocks


def decompose(p: SkewPencil) -> PencilType:
    """Full block decomposition with exact dimension bookkeeping."""
    indices = minimal_indices(p)
    kron = [Block("kronecker", e + 1) for e in indices]
    jordan = jordan_part(p)
    blocks = tuple(kron + jordan)
    total = sum(b.dimension() for b in blocks)
    if total != p.n:
        raise InternalInconsistency(
            f"block dimensions sum to {total}, expected {p.n}")
    if len(kron) != generic_corank(p):
        raise InternalInconsistency("Kronecker block count differs from generic corank")
    return PencilType(p.n, blocks)


def kernel_family(p: SkewPencil) -> KernelFamily:
    """A minimal polynomial basis of the kernel of lam*A + B.

    Only defined for pure-Kronecker pencils; one vector per block, with
    degree equal to the block's minimal index, verified by the exact
    identity (lam*A + B) w(lam) = 0.
    """
    ptype = decompose(p)
    if not ptype.is_pure_kronecker():
        raise NotPureKronecker("kernel families require a pencil without Jordan blocks")
    indices = sorted(b.k - 1 for b in ptype.kronecker_blocks())
    n = p.n
    chosen: list = []       # (degree, coefficient vectors v_0..v_d)
    for d in sorted(set(indices)):
        want = indices.count(d)
        null_basis = _convolution_nullity(p, d)
        span_rows = []
        for deg, vecs in chosen:
            for shift in range(d - deg + 1):
                padded = [Fraction(0)] * (n * (d + 1))
                for i, coeff_vec in enumerate(vecs):
                    for j in range(n):
                        padded[(i + shift) * n + j] = coeff_vec[j]
                span_rows.append(padded)
        base_rank = stack_rows(span_rows).rank() if span_rows else 0
        added = 0
        for cand in null_basis:
            if added == want:
                break
            trial = span_rows + [list(cand)]
            if stack_rows(trial).rank() > base_rank:
                span_rows = trial
                base_rank += 1
                vecs = [tuple(cand[i * n:(i + 1) * n]) for i in range(d + 1)]
                if all(x == 0 for x in vecs[-1]):
                    raise InternalInconsistency("minimal basis vector dropped degree")
                chosen.append((d, vecs))
                added += 1
        if added != want:
            raise InternalInconsistency("could not complete minimal kernel basis")
    vectors = []
    for deg, vecs in chosen:
        poly_vec = tuple(UPoly([vecs[i][j] for i in range(deg + 1)]) for j in range(n))
        _verify_kernel_vector(p, poly_vec)
        vectors.append(poly_vec)
    return KernelFamily(p, tuple(vectors), tuple(deg for deg, _ in chosen))


def _verify_kernel_vector(p: SkewPencil, poly_vec):
    """(lam*A + B) w(lam) must vanish identically."""
    deg = max(v.degree() for v in poly_vec)
    for power in range(deg + 2):
        for i in range(p.n):
            # coefficient of lam^power in ((lam*A + B) w(lam))_i
            total = Fraction(0)
            for j in range(p.n):
                if power >= 1:
                    total += p.A[i, j] * poly_vec[j][power - 1]
                total += p.B[i, j] * poly_vec[j][power]
            if total != 0:
                raise InternalInconsistency("kernel family failed exact verification")


def action_dimension(t: PencilType) -> int:
    """(n + number of Kronecker blocks) / 2; the parity always works out."""
    r = len(t.kronecker_blocks())
    if (t.n + r) % 2 != 0:
        raise InternalInconsistency("n + r must be even for a valid pencil type")
    return (t.n + r) // 2


# -- constant pencils used throughout ------------------------------------------


def kronecker_pencil(k: int) -> SkewPencil:
    """The odd 2k-1 dimensional indecomposable pair.

    Basis w_0..w_{2k-2}; the only nonzero pairings are (w_{2l}, w_{2l+1})
    in the first pairing and (w_{2l+1}, w_{2l+2}) in the second, both 1.
    """
    n = 2 * k - 1
    a = [[Fraction(0)] * n for _ in range(n)]
    b = [[Fraction(0)] * n for _ in range(n)]
    for l in range(k - 1):
        a[2 * l][2 * l + 1] = Fraction(1)
        a[2 * l + 1][2 * l] = Fraction(-1)
        b[2 * l + 1][2 * l + 2] = Fraction(1)
        b[2 * l + 2][2 * l + 1] = Fraction(-1)
    return SkewPencil.from_rows(a, b)


def jordan_pencil(k: int, mu) -> SkewPencil:
    """The 2k-dimensional pair built from a Jordan matrix with eigenvalue mu.

    For finite mu the first matrix carries the Jordan block and the second
    is the standard symplectic form; mu = "inf" swaps the roles, with the
    Jordan block at eigenvalue 0.
    """
    if mu == INF:
        jm = _jordan_matrix(k, Fraction(0))
        h1 = _off_diag_skew(_identity_rows(k))
        h2 = _off_diag_skew(jm)
    else:
        jm = _jordan_matrix(k, rat(mu))
        h1 = _off_diag_skew(jm)
        h2 = _off_diag_skew(_identity_rows(k))
    return SkewPencil.from_rows(h1, h2)


def _jordan_matrix(k: int, mu: Fraction) -> list:
    rows = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = mu
        if i + 1 < k:
            rows[i][i + 1] = Fraction(1)
    return rows


def _identity_rows(k: int) -> list:
    return [[Fraction(1 if i == j else 0) for j in range(k)] for i in range(k)]


def _off_diag_skew(block) -> list:
    k = len(block)
    rows = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        for j in range(k):
            rows[i][k + j] = block[i][j]
            rows[k + j][i] = -block[i][j]
    return rows


def epsilon_adjacency_pencil(eps) -> SkewPencil:
    """The 6-dimensional adjacency example: basis w_0..w_4, W.

    Kronecker pairings (w_{2l}, w_{2l+1})_1 = 1 and (w_{2l+1}, w_{2l+2})_2 = 1
    for l in {0, 1}, plus (W, w_1) = (W, w_3) = eps placed in the first
    pairing.  eps != 0 gives {K3, K3}; eps = 0 degenerates to {K5, K1}.
    """
    eps = rat(eps)
    a = [[Fraction(0)] * 6 for _ in range(6)]
    b = [[Fraction(0)] * 6 for _ in range(6)]
    for l in range(2):
        a[2 * l][2 * l + 1] = Fraction(1)
        a[2 * l + 1][2 * l] = Fraction(-1)
        b[2 * l + 1][2 * l + 2] = Fraction(1)
        b[2 * l + 2][2 * l + 1] = Fraction(-1)
    for idx in (1, 3):
        a[5][idx] = eps
        a[idx][5] = -eps
    return SkewPencil.from_rows(a, b)
