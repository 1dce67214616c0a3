"""Anchored Lenard chains: extraction, verification, involution, integrability.

Chains are never produced by solving the recurrence for unknown functions;
they are read off closed-form polynomial families by coefficient reversal,
which bridges the lambda-polynomial convention of the criteria and the
1/lambda expansion convention of the recursion scheme exactly.
"""

import json
from dataclasses import dataclass

from .casimir import LambdaFamily
from .errors import ValidationError
from .exactalg import parse_rational, stack_rows
from .pencil import action_dimension, decompose
from .poisson import BihamStructure, Certificate, as_point


@dataclass(frozen=True)
class LenardChain:
    """Functions H_0..H_n tied to a bracket pair by the chain recurrence.

    anchored means H_0 is a Casimir of the first bracket, verified exactly.
    """

    functions: tuple
    structure: BihamStructure
    anchored: bool
    name: str = ""

    def to_json(self) -> dict:
        return {"anchored": self.anchored,
                "functions": [str(f) for f in self.functions]}

    @classmethod
    def from_json(cls, data, structure: BihamStructure, name: str = "") -> "LenardChain":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            funcs = tuple(parse_rational(f, structure.variables)
                          for f in data["functions"])
            anchored = bool(data["anchored"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad chain JSON: {exc}") from exc
        return cls(funcs, structure, anchored, name=name)


def chain_from_family(b: BihamStructure, fam: LambdaFamily, name: str = "") -> LenardChain:
    """H_i := f_{d-i}; reversal maps the polynomial family to the 1/lambda expansion."""
    funcs = tuple(reversed(fam.coeffs))
    anchored = b.p1.is_casimir(funcs[0]).ok
    return LenardChain(funcs, b, anchored, name=name or fam.name)


def verify_chain(chain: LenardChain) -> Certificate:
    """Exact recurrence P2 grad H_i + P1 grad H_{i+1} = 0 for consecutive pairs."""
    b = chain.structure
    if chain.anchored:
        cov = b.p1.hamiltonian_covector(chain.functions[0])
        for j, entry in enumerate(cov):
            if not entry.is_zero():
                return Certificate(False, "chain",
                                   f"anchor fails: {{H0, {b.variables[j]}}}_1 = {entry}")
    for i in range(len(chain.functions) - 1):
        cov2 = b.p2.hamiltonian_covector(chain.functions[i])
        cov1 = b.p1.hamiltonian_covector(chain.functions[i + 1])
        for j in range(b.dim):
            acc = cov2[j] + cov1[j]
            if not acc.is_zero():
                return Certificate(
                    False, "chain",
                    f"recurrence fails at i={i}, coordinate {b.variables[j]}: {acc}")
    return Certificate(True, "chain")


def involution_check(funcs, b: BihamStructure) -> Certificate:
    """All pairwise brackets vanish under both structures, exactly."""
    funcs = list(funcs)
    for a in range(len(funcs)):
        for c in range(a + 1, len(funcs)):
            for which, p in ((1, b.p1), (2, b.p2)):
                res = p.bracket(funcs[a], funcs[c])
                if not res.is_zero():
                    return Certificate(
                        False, "involution",
                        f"{{H_{a}, H_{c}}}_{which} = {res}")
    return Certificate(True, "involution")


@dataclass(frozen=True)
class IntegrabilityVerdict:
    """Count of independent chain functions at a point versus the action dimension."""

    independent: int
    action_dim: int
    outcome: str       # StrictlyLenardIntegrable | Insufficient | JordanObstructed
    pencil_type: str

    def to_json(self) -> dict:
        return {"independent": self.independent, "action_dim": self.action_dim,
                "outcome": self.outcome, "pencil_type": self.pencil_type}


def integrability_verdict(b: BihamStructure, chains, point) -> IntegrabilityVerdict:
    """Gradient rank of all chain functions at the point versus action dimension.

    A Jordan block in the pointwise pencil absorbs no chain gradients, so a
    shortfall in the presence of Jordan blocks is reported as the
    obstruction rather than plain insufficiency.
    """
    point = as_point(point, b.dim)
    rows = []
    for chain in chains:
        for f in chain.functions:
            rows.append(tuple(f.diff(v).eval(point) for v in b.variables))
    count = stack_rows(rows).rank() if rows else 0
    ptype = decompose(b.pencil_at(point))
    adim = action_dimension(ptype)
    if count == adim:
        outcome = "StrictlyLenardIntegrable"
    elif not ptype.is_pure_kronecker():
        outcome = "JordanObstructed"
    else:
        outcome = "Insufficient"
    return IntegrabilityVerdict(count, adim, outcome, ptype.label())


def telescoping_check(chain: LenardChain) -> Certificate:
    """{H_i, H_j}_1 = {H_{i-1}, H_{j+1}}_1 for all valid index pairs."""
    b = chain.structure
    fs = chain.functions
    for i in range(1, len(fs)):
        for j in range(len(fs) - 1):
            left = b.p1.bracket(fs[i], fs[j])
            right = b.p1.bracket(fs[i - 1], fs[j + 1])
            if not (left - right).is_zero():
                return Certificate(False, "telescoping",
                                   f"failure at (i,j)=({i},{j})")
    return Certificate(True, "telescoping")
