"""Seeded rational point sampling on the generic locus of a model.

Numerators are uniform in [-10, 10] and denominators in [1, 5]; candidates
hitting a genericity inequation or a recorded denominator zero locus are
rejected, with a 10x budget before giving up.
"""

import random
from fractions import Fraction

from .errors import SamplingExhausted


def sample_points(dim: int, count: int, seed: int, inequations=(),
                  budget_factor: int = 10) -> list:
    """Deterministic list of rational points avoiding the zero loci of the
    given polynomials."""
    rng = random.Random(seed)
    points = []
    attempts = 0
    budget = max(1, budget_factor * count)
    while len(points) < count and attempts < budget:
        attempts += 1
        candidate = tuple(Fraction(rng.randint(-10, 10), rng.randint(1, 5))
                          for _ in range(dim))
        if all(g.eval(candidate) != 0 for g in inequations):
            points.append(candidate)
    if len(points) < count:
        raise SamplingExhausted(
            f"found {len(points)} generic points in {budget} attempts")
    return points


def model_inequations(model) -> list:
    """Genericity inequations plus every recorded denominator locus."""
    polys = list(model.genericity)
    for p in (model.structure.p1, model.structure.p2):
        for den in p.excluded:
            if den not in polys:
                polys.append(den)
    return polys
