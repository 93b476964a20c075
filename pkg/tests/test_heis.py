import pytest

from qorbit import uq
from qorbit.coeffs import QCoeff, one, qpow
from qorbit.heis import (HeisAlgebra, HeisElement, WModule, act_element,
                         act_generator, check_I0_invariance, nf_multiplicative,
                         pbw_counts)


@pytest.fixture(scope="module")
def H1():
    return HeisAlgebra(1)


@pytest.fixture(scope="module")
def H2():
    return HeisAlgebra(2)


def test_normal_form_examples(H1):
    # zh_1 z_0 (i != j) -> q^{-1} z_0 zh_1
    e = H1.from_word((("zh", 1), ("z", 0)))
    assert e.terms == {((1, 0), 0, (0, 1)): qpow(-1)}
    # z_n zh_n - zh_n z_n = C at the top index
    e = H1.z(1) * H1.zh(1) - H1.zh(1) * H1.z(1)
    assert e.terms == {((0, 0), 1, (0, 0)): one}
    # C z_0 -> q^{-2} z_0 C
    e = H1.from_word((("C",), ("z", 0)))
    assert e.terms == {((1, 0), 1, (0, 0)): qpow(-2)}
    # idempotence on a normal word
    w = (("z", 0), ("C",), ("zh", 1))
    assert H1.nf_word(w) == {((1, 0), 1, (0, 1)): one}


def test_inhomogeneous_rewrite_with_tail(H2):
    # zh_0 z_0 at rank 2 produces the C and the k>0 tail terms
    e = H2.from_word((("zh", 0), ("z", 0)))
    expect = (H2.z(0) * H2.zh(0) - H2.C()
              - (H2.z(1) * H2.zh(1) + H2.z(2) * H2.zh(2)).scale(qpow(-2) - one))
    assert (e - expect).is_zero()


def test_confluence_exhaustive():
    assert nf_multiplicative(HeisAlgebra(1), 4) is None
    assert nf_multiplicative(HeisAlgebra(2), 4) is None


def test_pbw_counts():
    bad, counts = pbw_counts(HeisAlgebra(1), 4)
    assert bad is None and counts == [1, 5, 15, 35, 70]
    bad, counts = pbw_counts(HeisAlgebra(2), 4)
    assert bad is None and counts == [1, 7, 28, 84, 210]


def test_x_invariants(H1, H2):
    # x_{n+1} = q c
    x2 = H1.x(2)
    assert (x2 - H1.c_lower().scale(qpow(1))).is_zero()
    for H in (H1, H2):
        xs = [H.x(i) for i in range(H.n + 2)]
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                assert xs[a].commutator(xs[b]).is_zero()
        # z_i x_j = q^2 x_j z_i for i < j; equal for i >= j
        for i in range(H.n + 1):
            for j in range(H.n + 2):
                lhs = H.z(i) * xs[j]
                rhs = (xs[j] * H.z(i)).scale(qpow(2) if i < j else one)
                assert (lhs - rhs).is_zero()
                lhs = H.zh(i) * xs[j]
                rhs = (xs[j] * H.zh(i)).scale(qpow(-2) if i < j else one)
                assert (lhs - rhs).is_zero()
    # z_i zhat_i = x_i - x_{i+1}
    for H in (H1, H2):
        for i in range(H.n + 1):
            assert (H.z(i) * H.zh(i) - (H.x(i) - H.x(i + 1))).is_zero()


def test_uq_action_examples(H1):
    assert act_generator(("E", 1), H1.z(1)).terms == {((1, 0), 0, (0, 0)): one}
    assert act_generator(("K", 1, 1), H1.zh(0)).terms == {((0, 0), 0, (1, 0)): qpow(1)}
    assert act_generator(("E", 1), H1.C()).is_zero()
    assert act_generator(("F", 1), H1.z(0)).terms == {((0, 1), 0, (0, 0)): one}
    assert act_generator(("E", 1), H1.zh(0)).terms == {((0, 0), 0, (0, 1)): -qpow(-1)}


def test_action_is_module_algebra(H1):
    samples = [H1.z(0), H1.zh(1), H1.z(1) * H1.zh(0), H1.C() * H1.z(0), H1.x(1)]
    g = uq.generators(1)
    for name in ("E1", "F1", "K1"):
        a = g[name]
        for f in samples:
            for h in samples:
                lhs = act_element(a, f * h)
                rhs = HeisElement(H1)
                for (w1, w2), cf in a.coproduct().pairs():
                    part = (act_element(uq.AlgebraElement(1, {w1: one}), f)
                            * act_element(uq.AlgebraElement(1, {w2: one}), h))
                    rhs = rhs + part.scale(cf)
                assert (lhs - rhs).is_zero()


def test_sharp_star_examples(H1):
    assert H1.z(1).star("sharp").terms == {((0, 0), 0, (0, 1)): one}
    # (z0 z1)^sharp = zh1 zh0 = q zh0 zh1 (from zh_i zh_j = q^{-1} zh_j zh_i, i<j)
    e = (H1.z(0) * H1.z(1)).star("sharp")
    assert e.terms == {((0, 0), 0, (1, 1)): qpow(1)}
    assert H1.z(0).star("star", (-1, 1)).terms == {((0, 0), 0, (1, 0)): -one}
    # involutive
    f = H1.z(0) * H1.zh(1) * H1.C()
    assert (f.star("sharp").star("sharp") - f).is_zero()
    assert (f.star("star", (-1, 1)).star("star", (-1, 1)) - f).is_zero()


def test_module_star_law(H1):
    g = uq.generators(1)
    samples = [H1.z(0), H1.z(1), H1.zh(0), H1.z(0) * H1.zh(1), H1.C() * H1.z(1)]
    for name in ("E1", "F1", "K1", "K1inv"):
        xi = g[name]
        for f in samples:
            lhs = act_element(xi, f).star("sharp")
            rhs = act_element(xi.omega("flat"), f.star("sharp"))
            assert (lhs - rhs).is_zero()
            lhs = act_element(xi, f).star("star", (-1, 1))
            rhs = act_element(xi.omega("natural", (-1, 1)), f.star("star", (-1, 1)))
            assert (lhs - rhs).is_zero()


def test_I0_invariance():
    assert check_I0_invariance(1)["status"] == "pass"
    assert check_I0_invariance(2)["status"] == "pass"


def test_W_basics():
    W = WModule(1, 2)
    assert W.dim() == 6
    vac = W.vacuum()
    v = W.apply(("zh", 1), W.apply(("z", 1), vac))
    # zhat_1 z_1 vacuum = -vacuum (the relation gives z zhat - C on the vacuum)
    assert v == {0: -one}
    v = W.apply(("C",), W.apply(("z", 0), vac))
    (idx, cf), = v.items()
    assert cf == qpow(-2)


def test_W_defining_relations_exact():
    for n, N in ((1, 6), (2, 5)):
        W = WModule(n, N)
        for name, rel in uq.defining_relations(n):
            assert W.annihilated_by(rel), (n, name)


def test_W_monomials_are_x_eigenvectors():
    W = WModule(1, 4)
    H = W.algebra
    for i in range(3):
        xi = H.x(i)
        for col in range(W.dim()):
            out = {}
            for key, cf in xi.terms.items():
                word = H.key_word(key)
                vec = {col: one}
                for letter in reversed(word):
                    vec = W.apply(letter, vec)
                for row, v in vec.items():
                    out[row] = out.get(row, QCoeff.integer(0)) + v * cf
            out = {k: v for k, v in out.items() if not v.is_zero()}
            assert set(out) <= {col}


def test_W_no_invariant_coordinate_subspace():
    # orbit of any basis index under z, zh actions reaches every index
    W = WModule(1, 4)
    ops = [("z", 0), ("z", 1), ("zh", 0), ("zh", 1)]
    reached = {0}
    frontier = [0]
    adj = {}
    for op in ops:
        cols = W.op_columns(op)
        for col in range(W.dim()):
            adj.setdefault(col, set()).update(row for row, _ in cols[col])
    while frontier:
        nxt = []
        for i in frontier:
            for j in adj.get(i, ()):
                if j not in reached:
                    reached.add(j)
                    nxt.append(j)
        frontier = nxt
    assert reached == set(range(W.dim()))
