"""Lenard chains: extraction, recurrence, involution, integrability."""

from fractions import Fraction

from biham.casimir import LambdaFamily
from biham.exactalg import parse_rational
from biham.lenard import (LenardChain, chain_from_family, integrability_verdict,
                          involution_check, telescoping_check, verify_chain)
from biham.models import (flat_kronecker, jordan_model, m_f, open_toda,
                          periodic_toda)


K5 = flat_kronecker(3)
V3 = open_toda(1)
V5 = open_toda(2)
MXY = m_f("x + y")


def _pt(*vals):
    return tuple(Fraction(v) for v in vals)


def test_chain_from_family_flat():
    chain = chain_from_family(K5.structure, K5.families[0])
    assert [str(h) for h in chain.functions] == ["x4", "x2", "x0"]
    assert chain.anchored
    assert verify_chain(chain).ok


def test_chain_from_family_v3():
    chain = chain_from_family(V3.structure, V3.families[0])
    assert [str(h) for h in chain.functions] == ["v0 + v2", "v0*v2 - v1^2"]
    assert chain.anchored
    assert verify_chain(chain).ok


def test_chain_from_family_mxy():
    chain = chain_from_family(MXY.structure, MXY.families[0])
    assert [str(h) for h in chain.functions] == ["y", "x"]
    assert chain.anchored
    assert verify_chain(chain).ok


def test_chain_certified_families_always_verify():
    for model in (K5, V3, V5, periodic_toda(3)):
        for fam in model.families:
            chain = chain_from_family(model.structure, fam)
            assert chain.anchored
            assert verify_chain(chain).ok


def test_verify_chain_mutation():
    # dropping the middle function breaks the recurrence at the first link
    s = K5.structure
    x4 = parse_rational("x4", s.variables)
    x0 = parse_rational("x0", s.variables)
    bad = LenardChain((x4, x0), s, anchored=True)
    cert = verify_chain(bad)
    assert not cert.ok and "i=0" in cert.detail


def test_verify_chain_singleton():
    s = K5.structure
    x4 = parse_rational("x4", s.variables)
    assert verify_chain(LenardChain((x4,), s, anchored=True)).ok


def test_involution_examples():
    chain = chain_from_family(V3.structure, V3.families[0])
    assert involution_check(chain.functions, V3.structure).ok
    f = parse_rational("v0 + v1^2", V3.structure.variables)
    assert involution_check([f, f], V3.structure).ok
    v0 = parse_rational("v0", V3.structure.variables)
    v1 = parse_rational("v1", V3.structure.variables)
    cert = involution_check([v0, v1], V3.structure)
    assert not cert.ok


def test_involution_across_all_chains_of_one_structure():
    model = periodic_toda(3)
    funcs = []
    for fam in model.families:
        funcs.extend(chain_from_family(model.structure, fam).functions)
    assert involution_check(funcs, model.structure).ok


def test_telescoping():
    for model in (V3, V5):
        chain = chain_from_family(model.structure, model.families[0])
        assert telescoping_check(chain).ok


def test_integrability_open_toda():
    chain = chain_from_family(V5.structure, V5.families[0])
    verdict = integrability_verdict(V5.structure, [chain], _pt(1, 1, 2, 1, 3))
    assert verdict.outcome == "StrictlyLenardIntegrable"
    assert verdict.independent == 3 and verdict.action_dim == 3


def test_integrability_periodic():
    model = periodic_toda(3)
    chains = [chain_from_family(model.structure, fam) for fam in model.families]
    verdict = integrability_verdict(model.structure, chains,
                                    _pt(1, 2, 1, 1, 2, 3))
    assert verdict.outcome == "StrictlyLenardIntegrable"
    assert verdict.independent == 4 and verdict.action_dim == 4


def test_integrability_jordan_obstructed():
    model = jordan_model(1, 2)
    const = LambdaFamily((parse_rational("7", model.structure.variables),))
    chain = chain_from_family(model.structure, const)
    assert chain.anchored
    verdict = integrability_verdict(model.structure, [chain], _pt(1, 1))
    assert verdict.outcome == "JordanObstructed"
    assert verdict.independent == 0 and verdict.action_dim == 1


def test_independent_count_bounded_by_action_dim():
    # at pure-Kronecker points the gradient count never exceeds the action
    # dimension
    for model, pt in ((V3, _pt(1, 1, 1)), (V5, _pt(1, 1, 2, 1, 3))):
        chains = [chain_from_family(model.structure, fam) for fam in model.families]
        verdict = integrability_verdict(model.structure, chains, pt)
        assert verdict.independent <= verdict.action_dim


def test_chain_json_roundtrip():
    chain = chain_from_family(V3.structure, V3.families[0])
    data = chain.to_json()
    assert data["anchored"] is True
    back = LenardChain.from_json(data, V3.structure)
    assert back.functions == chain.functions
