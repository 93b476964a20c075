import pytest

from qorbit import uq
from qorbit.coeffs import QCoeff, one, qpow
from qorbit.heis import WModule


@pytest.fixture(scope="module")
def W():
    return WModule(1, 6)


@pytest.fixture(scope="module")
def gens():
    return uq.generators(1)


def test_coproduct_generators(gens):
    cp = gens["K1"].coproduct().terms
    assert cp == {((("K", 1, 1),), (("K", 1, 1),)): one}
    cp = gens["E1"].coproduct().terms
    assert set(cp) == {((("E", 1),), ()), ((("K", 1, -1),), (("E", 1),))}
    assert all(v == one for v in cp.values())
    unit = uq.AlgebraElement.unit(1)
    assert unit.coproduct().terms == {((), ()): one}


def test_antipode_and_counit(gens):
    s = gens["E1"].antipode()
    assert s.terms == {(("K", 1, 1), ("E", 1)): -one}
    assert gens["K1"].antipode().terms == {(("K", 1, -1),): one}
    assert gens["F1"].antipode().terms == {(("F", 1), ("K", 1, -1)): -one}
    assert gens["F1"].counit().is_zero()
    assert gens["K1"].counit() == one


def test_star_forms(gens):
    flat = gens["E1"].star("flat")
    assert flat.terms == {(("K", 1, -2), ("F", 1)): one}
    assert gens["F1"].star("flat").terms == {(("E", 1), ("K", 1, 2)): one}
    nat = gens["E1"].star("natural", (-1, 1))
    assert nat.terms == {(("K", 1, -2), ("F", 1)): -one}
    # involutivity
    again = gens["F1"].star("flat").star("flat")
    assert (again - gens["F1"]).is_structurally_zero()
    again = gens["E1"].star("natural", (-1, 1)).star("natural", (-1, 1))
    assert (again - gens["E1"]).is_structurally_zero()


def test_adjoint_action_examples(W, gens):
    b = gens["F1"]
    # ad(K) b = K b K^-1
    lhs = uq.adjoint_action(gens["K1"], b)
    rhs = gens["K1"] * b * gens["K1inv"]
    assert W.equal(lhs, rhs)
    # unit acts as identity
    assert W.equal(uq.adjoint_action(uq.AlgebraElement.unit(1), b), b)
    # hand expansion of ad(E) F
    manual = gens["E1"] * gens["F1"] - gens["K1inv"] * gens["F1"] * gens["K1"] * gens["E1"]
    assert W.equal(uq.adjoint_action(gens["E1"], b), manual)


def test_adjoint_module_axiom(W, gens):
    a1, a2, b = gens["E1"], gens["F1"], gens["K1"]
    lhs = uq.adjoint_action(a1, uq.adjoint_action(a2, b))
    rhs = uq.adjoint_action(a1 * a2, b)
    assert W.equal(lhs, rhs)


def test_casimir(W, gens):
    C = uq.casimir_sl2()
    w = (qpow(-1) + qpow(1)) / ((qpow(-1) - qpow(1)) ** 2 * 2)
    assert C.terms[(("K", 1, 1),)] == w
    assert C.counit().is_zero()
    W8 = WModule(1, 8)
    for g in ("E1", "F1", "K1"):
        comm = C * gens[g] - gens[g] * C
        assert W8.annihilated_by(comm)


def test_hopf_axioms_on_generators(W, gens):
    for name in ("E1", "F1", "K1"):
        a = gens[name]
        cp = a.coproduct()
        eps_id = uq.AlgebraElement(1)
        for (w1, w2), cf in cp.pairs():
            eps1 = uq.AlgebraElement(1, {w1: one}).counit()
            eps_id = eps_id + uq.AlgebraElement(1, {w2: cf * eps1})
        assert W.equal(eps_id, a)
        m_s = uq.AlgebraElement(1)
        for (w1, w2), cf in cp.pairs():
            m_s = m_s + (uq.AlgebraElement(1, {w1: cf}).antipode()
                         * uq.AlgebraElement(1, {w2: one}))
        assert W.equal(m_s, uq.AlgebraElement.unit(1, a.counit()))


def test_omega_involutive_and_relation_preserving(W, gens):
    for name in ("E1", "F1", "K1"):
        a = gens[name]
        assert W.equal(a.omega("flat").omega("flat"), a)
        assert W.equal(a.omega("natural", (-1, 1)).omega("natural", (-1, 1)), a)
    for _, rel in uq.defining_relations(1):
        assert W.annihilated_by(rel.omega("flat"))
        assert W.annihilated_by(rel.omega("natural", (-1, 1)))


def test_automorphism_I(gens):
    a = uq.automorphism_I(1, gens["E1"])
    assert a.terms == {(("E", 1),): -one}
    assert uq.automorphism_I(1, gens["F1"]).terms == {(("F", 1),): one}
    twice = uq.automorphism_I(1, uq.automorphism_I(1, gens["K1"]))
    assert (twice - gens["K1"]).is_structurally_zero()


def test_K_merge_in_words(gens):
    x = gens["K1"] * gens["K1inv"]
    assert x.terms == {(): one}
    y = gens["K1"] * gens["K1"]
    assert y.terms == {(("K", 1, 2),): one}


def test_parser():
    e = uq.parse_expression("E1 F1 K1^-1 (q^2)", 1)
    assert e.terms == {(("E", 1), ("F", 1), ("K", 1, -1)): qpow(2)}
    e2 = uq.parse_expression("(1/2) K1 + (q) E1 E1 - F1", 1)
    assert e2.terms[(("K", 1, 1),)] == QCoeff.rational(1, 2)
    assert e2.terms[(("E", 1), ("E", 1))] == qpow(1)
    assert e2.terms[(("F", 1),)] == -one
    with pytest.raises(ValueError):
        uq.parse_expression("E3", 1)
