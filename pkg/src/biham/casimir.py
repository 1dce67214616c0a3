"""Lambda-Casimir families and the flatness criteria they feed.

A family F_lam = sum f_k lam^k is checked exactly: the defining identity
(lam*P1 + P2) grad F_lam = 0 splits into coefficient chain relations that
are verified one lambda power at a time.  The span of the coefficient
differentials at a point drives the certified single-family criterion
(theorem strength, corank 1) and the multi-family path, which is reported
as conjectural and always cross-validated against a direct pencil
decomposition.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistency, PoleAtPoint, ValidationError
from .exactalg import RationalFunction, parse_rational, stack_rows
from .pencil import action_dimension, corank_profile, decompose, generic_corank
from .poisson import BihamStructure, Certificate, as_point


@dataclass(frozen=True)
class LambdaFamily:
    """Polynomial family of functions, Casimir for lam*{,}_1 + {,}_2.

    coeffs[k] is the coefficient of lam^k; the leading coefficient must be
    nonzero.  The orientation tag records the pencil parametrization the
    family was verified against (models that arrive in a reflected or
    reciprocal parametrization are reparametrized at construction).
    """

    coeffs: tuple
    orientation: str = "lam*P1+P2"
    name: str = ""

    def __post_init__(self):
        if not self.coeffs:
            raise ValidationError("family needs at least one coefficient")
        if self.coeffs[-1].is_zero():
            raise ValidationError("leading family coefficient is identically zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> RationalFunction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RationalFunction.constant(0, self.coeffs[0].variables)

    def shifted_by(self, poly_coeffs) -> "LambdaFamily":
        """Add a constant-coefficient polynomial p(lam) of degree <= degree."""
        vars_ = self.coeffs[0].variables
        new = list(self.coeffs)
        for k, c in enumerate(poly_coeffs):
            if k >= len(new):
                break
            new[k] = new[k] + RationalFunction.constant(c, vars_)
        return LambdaFamily(tuple(new), self.orientation, self.name)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, variables, name: str = "") -> "LambdaFamily":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            coeffs = tuple(parse_rational(c, variables) for c in data["coeffs"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad family JSON: {exc}") from exc
        fam = cls(coeffs, name=name)
        if fam.degree != data.get("degree", fam.degree):
            raise ValidationError("family degree field disagrees with coefficients")
        return fam


def family_check(b: BihamStructure, fam: LambdaFamily) -> Certificate:
    """Exact identity (lam*P1 + P2) grad F_lam = 0, coefficient-wise in lam.

    The lambda coefficients are the chain relations: P2 grad f_0 = 0,
    P1 grad f_{k-1} + P2 grad f_k = 0, and P1 grad f_d = 0.
    """
    d = fam.degree
    for k in range(d + 2):
        prev = fam.coeff(k - 1)
        cur = fam.coeff(k)
        cov1 = b.p1.hamiltonian_covector(prev) if not prev.is_zero() else None
        cov2 = b.p2.hamiltonian_covector(cur) if not cur.is_zero() else None
        for j in range(b.dim):
            acc = b.p1.zero_function()
            if cov1 is not None:
                acc = acc + cov1[j]
            if cov2 is not None:
                acc = acc + cov2[j]
            if not acc.is_zero():
                return Certificate(
                    False, "family",
                    f"lambda^{k} coefficient fails at {b.variables[j]}: {acc}")
    return Certificate(True, "family")


def coefficient_gradients(families, point) -> list:
    """Rows grad f_{l,k}(m) over all families l and coefficients k."""
    rows = []
    for fam in families:
        variables = fam.coeffs[0].variables
        for c in fam.coeffs:
            rows.append(tuple(c.diff(v).eval(point) for v in variables))
    return rows


def w1_span_dim(families, point) -> int:
    """Dimension of the span of the family differentials at a point.

    The coefficients span the same space as dF_lam over varying lam.
    """
    return stack_rows(coefficient_gradients(families, point)).rank()


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of the flatness/homogeneity criterion at a point."""

    outcome: str                      # KroneckerCertified | HomogeneousIndicated | Inconclusive
    type_dims: tuple | None
    conjectural: bool
    provenance: str
    reason: str
    n: int
    r: int
    w1_dim: int
    degrees: tuple
    corank_profile: dict
    cross_check: str = ""

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "type": list(self.type_dims) if self.type_dims else None,
            "conjectural": self.conjectural,
            "provenance": self.provenance,
            "reason": self.reason,
            "n": self.n, "r": self.r, "w1_dim": self.w1_dim,
            "degrees": list(self.degrees),
            "corank_profile": self.corank_profile,
            "cross_check": self.cross_check,
        }


def kronecker_criterion(b: BihamStructure, families, point) -> CriterionVerdict:
    """Criterion run at one point, cross-validated against decompose.

    The single-family corank-1 route is theorem strength; the multi-family
    route rests on the conjectural type formula and is flagged as such.
    """
    point = as_point(point, b.dim)
    for fam in families:
        cert = family_check(b, fam)
        if not cert.ok:
            raise ValidationError(f"family failed its certificate: {cert.detail}")
    pencil = b.pencil_at(point)
    r = generic_corank(pencil)
    ptype = decompose(pencil)
    cross = ptype.label()
    w1 = w1_span_dim(families, point)
    degrees = tuple(f.degree for f in families)
    n = b.dim
    prof = corank_profile(pencil)

    common = dict(n=n, r=r, w1_dim=w1, degrees=degrees, corank_profile=prof,
                  cross_check=cross)

    if len(families) == 1 and r == 1:
        d = degrees[0]
        if Fraction(w1) < Fraction(n + r, 2):
            return CriterionVerdict("Inconclusive", None, False,
                                    "single-family path",
                                    "span bound dim W1 >= (n+r)/2 fails", **common)
        if not Fraction(d) < Fraction(n, 2):
            return CriterionVerdict("Inconclusive", None, False,
                                    "single-family path",
                                    "degree bound d < dim M/2 fails", **common)
        if not ptype.is_pure_kronecker() or ptype.kronecker_dims() != (n,):
            raise InternalInconsistency(
                f"criterion certifies (type ({n})) but decomposition gives {cross}")
        return CriterionVerdict("KroneckerCertified", (n,), False,
                                "single-family flatness criterion (corank 1)",
                                "", **common)

    if Fraction(w1) < Fraction(n + r, 2):
        return CriterionVerdict("Inconclusive", None, False, "multi-family path",
                                "span bound dim W1 >= (n+r)/2 fails", **common)
    if len(families) < r:
        return CriterionVerdict("Inconclusive", None, False, "multi-family path",
                                "family count below the number of Kronecker blocks",
                                **common)
    dim_sum = sum(2 * d + 1 for d in degrees)
    if dim_sum > n:
        return CriterionVerdict("Inconclusive", None, False, "multi-family path",
                                "degree bound sum(2*d_l + 1) <= dim M fails", **common)
    indicated = tuple(sorted((2 * d + 1 for d in degrees), reverse=True))
    reason = ""
    if ptype.kronecker_dims() != indicated or not ptype.is_pure_kronecker():
        reason = f"decomposition {cross} disagrees with indicated type"
    return CriterionVerdict("HomogeneousIndicated", indicated, True,
                            "multi-family conjectural type formula", reason, **common)


@dataclass(frozen=True)
class LaxVerdict:
    """Graded conclusion for a polynomial map into the space of degree n-1 polynomials."""

    level: str            # NotApplicable | WeakLax | Lax | KroneckerConcluded
    rank: int             # n, the rank of the would-be Lax structure
    gradient_rank: int
    action_dim: int | None
    concluded_dim: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"level": self.level, "rank": self.rank,
                "gradient_rank": self.gradient_rank,
                "action_dim": self.action_dim,
                "concluded_dim": self.concluded_dim, "detail": self.detail}


def lax_check(b: BihamStructure, fam: LambdaFamily, point,
              seed: int = 0, nearby: int = 5) -> LaxVerdict:
    """Weak Lax / Lax / Kronecker-concluded verdict at a point.

    Weak Lax needs only the family identity.  Lax needs the coefficient map
    to be submersive at the point with action dimension equal to the rank.
    The corank-1 hypothesis is sampled at the point and at nearby rational
    offsets (magnitude <= 1/10, seed-controlled) before concluding the
    Kronecker type of dimension 2n - 1.
    """
    point = as_point(point, b.dim)
    n_rank = fam.degree + 1
    cert = family_check(b, fam)
    if not cert.ok:
        return LaxVerdict("NotApplicable", n_rank, 0, None,
                          detail=f"family identity fails: {cert.detail}")
    grad_rank = w1_span_dim([fam], point)
    ptype = decompose(b.pencil_at(point))
    adim = action_dimension(ptype)
    if grad_rank != n_rank or adim != n_rank:
        return LaxVerdict("WeakLax", n_rank, grad_rank, adim,
                          detail="submersion or action-dimension condition fails")
    rng = random.Random(seed)
    samples = [point]
    for _ in range(nearby):
        offset = tuple(Fraction(rng.randint(-10, 10), 100) for _ in range(b.dim))
        samples.append(tuple(x + o for x, o in zip(point, offset)))
    for m in samples:
        try:
            pc = b.pencil_at(m)
        except PoleAtPoint:
            continue
        if generic_corank(pc) != 1:
            return LaxVerdict("Lax", n_rank, grad_rank, adim,
                              detail="corank-1 hypothesis failed at a sampled point")
    return LaxVerdict("KroneckerConcluded", n_rank, grad_rank, adim,
                      concluded_dim=2 * n_rank - 1)
