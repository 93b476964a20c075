import cmath
import math

import numpy as np
import pytest

from qorbit.qfun import (ConvergenceError, flat_disc_moment, kernel_plus,
                         kernel_plus_coeff, kernel_strange,
                         kernel_strange_coeff, measure_check,
                         measure_check_strange, measure_plus_atoms,
                         measure_strange_atoms, qpochhammer, radial_moment,
                         ramanujan_psi, reproduce_monomial,
                         reproduce_monomial_strange)

Q = 0.45
T = Q * Q


def test_qpochhammer_basics():
    assert qpochhammer(0.3, 0.5, 0) == 1.0
    assert qpochhammer(0.0, 0.5) == 1.0
    assert qpochhammer(0.25, 0.25, 2) == pytest.approx(0.703125)
    # negative order
    assert qpochhammer(0.3, 0.5, -2) == pytest.approx(1 / ((1 - 0.6) * (1 - 1.2)))
    # shifted symbol consistency: (a;t)_alpha with integer alpha matches
    for k in (1, 3):
        assert qpochhammer(0.3, 0.5, float(k)) == pytest.approx(
            qpochhammer(0.3, 0.5, k), rel=1e-12)
    with pytest.raises(ValueError):
        qpochhammer(0.3, 1.1)


def test_ramanujan_psi_vs_brute_force():
    a, b, t, x = 0.8, 0.2, 0.35, 0.5
    total = 1.0
    term = 1.0
    ak, bk = a, b
    for _ in range(300):
        term *= (1 - ak) / (1 - bk) * x
        ak *= t
        bk *= t
        total += term
    term = 1.0
    for m in range(1, 100):
        term *= (1 - b * t ** -m) / (1 - a * t ** -m) / x
        total += term
    assert ramanujan_psi(a, b, t, x) == pytest.approx(total, rel=1e-12)


def test_ramanujan_psi_divergent_cases_rejected():
    # a = b: all ratios are 1 and the bilateral geometric sum never converges
    with pytest.raises(ConvergenceError):
        ramanujan_psi(0.5, 0.5, 0.3, 0.4)
    with pytest.raises(ConvergenceError):
        ramanujan_psi(0.3, 0.7, 0.35, 0.5)   # |x| below |b/a|
    with pytest.raises(ConvergenceError):
        ramanujan_psi(0.8, 0.2, 0.35, 1.1)   # |x| >= 1


def test_kernel_taylor_coefficients():
    l = -1.3
    z = 0.4
    taylor = sum(kernel_plus_coeff(k, l, Q) * z ** k for k in range(300))
    direct = kernel_plus(math.sqrt(z), math.sqrt(z), l, Q)
    assert taylor == pytest.approx(direct.real, rel=1e-13)
    # k = 1 coefficient at l = -1/2 is 1 (limit case of the expansion)
    assert kernel_plus_coeff(1, -0.5, Q) == pytest.approx(1.0)
    assert kernel_plus_coeff(0, l, Q) == 1.0


def test_kernel_hermitian_and_domain():
    l = -1.0
    lam, mu = 0.3 + 0.4j, 0.5 - 0.1j
    assert kernel_plus(lam, mu, l, Q).conjugate() == pytest.approx(
        kernel_plus(mu, lam, l, Q))
    assert kernel_plus(0.0, 0.5, l, Q) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        kernel_plus(1.2, 0.5, l, Q)
    with pytest.raises(ValueError):
        kernel_plus(0.5, 0.5, -0.3, Q)


def test_kernel_psd():
    rng = np.random.default_rng(3)
    for l in (-0.75, -1.5, -2.2):
        for _ in range(10):
            pts = (rng.uniform(0.05, 0.85, 7)
                   * np.exp(1j * rng.uniform(0, 2 * math.pi, 7)))
            G = np.array([[kernel_plus(a, b, l, Q) for b in pts] for a in pts])
            mineig = np.min(np.linalg.eigvalsh((G + G.conj().T) / 2))
            assert mineig > -1e-10


def test_strange_kernel_hermitian_and_annulus():
    alpha, eps = 1.0, 0.25
    lam, mu = 0.5 + 0.2j, 0.6 - 0.3j
    v = kernel_strange(lam, mu, alpha, eps, Q)
    w = kernel_strange(mu, lam, alpha, eps, Q)
    assert v.conjugate() == pytest.approx(w)
    with pytest.raises(ValueError):
        kernel_strange(0.01, 0.01, alpha, eps, Q)


def test_measures():
    # flat measure moments at l = -1/2
    assert [flat_disc_moment(k) for k in range(3)] == pytest.approx(
        [math.pi, math.pi / 2, math.pi / 3])
    rep = measure_check(-1.3, 0.0, Q, 20)
    assert rep["worst_rel_err"] < 1e-12
    # strange measure has exactly 2 alpha + 2 atoms
    for alpha in (0.5, 1.0, 2.0):
        atoms = measure_strange_atoms(alpha, 0.2, Q)
        assert len(atoms) == int(2 * alpha + 2)
    rep = measure_check_strange(1.0, 0.25, Q, 10)
    assert rep["worst_rel_err"] < 1e-10
    with pytest.raises(ValueError):
        measure_strange_atoms(0.7, 0.2, Q)
    with pytest.raises(ValueError):
        measure_plus_atoms(-0.4, Q)


def test_angular_orthogonality():
    # int e^{i (j-k) theta} dtheta = 0 for j != k via the quadrature used
    M = 64
    for j, k in ((0, 1), (2, 5)):
        acc = sum(cmath.exp(1j * (j - k) * 2 * math.pi * s / M) for s in range(M))
        assert abs(acc) < 1e-12


def test_reproducing_property():
    mu = 0.35 + 0.2j
    for l in (-0.8, -1.5):
        for j in range(0, 11):
            v = reproduce_monomial(l, Q, j, mu)
            assert abs(v - mu ** j) < 1e-6
    mu2 = 0.55
    for j in range(-5, 6):
        v = reproduce_monomial_strange(1.0, 0.25, Q, j, mu2)
        assert abs(v - mu2 ** j) < 1e-6
