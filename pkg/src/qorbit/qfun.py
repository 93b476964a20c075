"""Numeric q-special functions: q-Pochhammer symbols, the bilateral
Ramanujan sum, the holomorphic-realization kernels for the discrete and
strange series, and their orthogonality measures with reproducing checks.

Truncations are certified: infinite products stop when the log-tail bound
drops below the tolerance, bilateral sums monitor both tail ratios.
Only normalization-independent quantities are asserted (the overall measure
normalization is not pinned down; moments are compared through the kernel
coefficients).
"""

from __future__ import annotations

import cmath
import math


class ConvergenceError(ArithmeticError):
    pass


def qpochhammer(a: complex, t: complex, order=None, tol: float = 1e-15) -> complex:
    """(a; t)_order; order None or math.inf means the infinite product,
    an int means the finite (possibly negative) product, any other number
    the shifted symbol (a;t)_alpha = (a;t)_inf / (a t^alpha; t)_inf."""
    if order is None or order == math.inf:
        return _qpoch_inf(a, t, tol)
    if isinstance(order, int):
        if order >= 0:
            p = 1.0 + 0.0j
            ak = complex(a)
            for _ in range(order):
                p *= (1 - ak)
                ak *= t
            return p
        p = 1.0 + 0.0j
        for j in range(1, -order + 1):
            p *= (1 - a * t ** -j)
        return 1.0 / p
    shift = a * cmath.exp(complex(order) * cmath.log(t))
    return _qpoch_inf(a, t, tol) / _qpoch_inf(shift, t, tol)


def _qpoch_inf(a: complex, t: complex, tol: float) -> complex:
    if abs(t) >= 1:
        raise ValueError("infinite q-Pochhammer needs |t| < 1")
    p = 1.0 + 0.0j
    ak = complex(a)
    k = 0
    # remaining log-product bounded by 2|a||t|^k/(1-|t|) once |a t^k| <= 1/2
    while abs(ak) > tol * (1 - abs(t)) / 2:
        p *= (1 - ak)
        ak *= t
        k += 1
        if k > 10 ** 6:
            raise ConvergenceError("q-Pochhammer did not converge")
    return p


def ramanujan_psi(a: complex, b: complex, t: complex, x: complex,
                  tol: float = 1e-14, max_terms: int = 100000) -> complex:
    """The bilateral sum over all integers of (a;t)_k/(b;t)_k x^k.

    Converges in the annulus |b/a| < |x| < 1; both tails are monitored and
    a divergent side raises ConvergenceError naming the side.
    """
    if abs(t) >= 1:
        raise ValueError("|t| < 1 required")
    total = 1.0 + 0.0j
    # upward: term_{k+1} = term_k (1 - a t^k)/(1 - b t^k) x
    term = 1.0 + 0.0j
    ak, bk = complex(a), complex(b)
    growing = 0
    for _ in range(max_terms):
        if abs(1 - bk) < 1e-300:
            raise ZeroDivisionError("(b;t)_k vanished")
        new = term * (1 - ak) / (1 - bk) * x
        ak *= t
        bk *= t
        growing = growing + 1 if abs(new) > abs(term) else 0
        if growing > 60 and abs(new) > 1.0:
            raise ConvergenceError("upper tail of the bilateral sum diverges (|x| too large)")
        term = new
        total += term
        if abs(term) < tol * max(1.0, abs(total)):
            break
    else:
        raise ConvergenceError("upper tail of the bilateral sum did not settle")
    # downward: term_{k-1} = term_k (1 - b t^{k-1}) / ((1 - a t^{k-1}) x)
    term = 1.0 + 0.0j
    am, bm = complex(a) / t, complex(b) / t
    growing = 0
    for _ in range(max_terms):
        if abs(1 - am) < 1e-300:
            raise ZeroDivisionError("(a;t)_k vanished going down")
        new = term * (1 - bm) / ((1 - am) * x)
        am /= t
        bm /= t
        growing = growing + 1 if abs(new) > abs(term) else 0
        if growing > 60 and abs(new) > 1.0:
            raise ConvergenceError("lower tail of the bilateral sum diverges (|x| too small)")
        term = new
        total += term
        if abs(term) < tol * max(1.0, abs(total)):
            break
    else:
        raise ConvergenceError("lower tail of the bilateral sum did not settle")
    return total


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def kernel_plus(lam: complex, mu: complex, l: float, q: float,
                tol: float = 1e-15) -> complex:
    """Coherent-vector overlap of the highest-weight realization:
    1/(lam conj(mu); q^2)_{-2l}, holomorphic on the unit disc, l <= -1/2."""
    if abs(lam) > 1 or abs(mu) > 1 or abs(lam * mu) >= 1:
        raise ValueError("kernel_plus requires points in the closed disc with |lam mu| < 1")
    if l > -0.5 + 1e-12:
        raise ValueError("kernel_plus requires l <= -1/2")
    z = lam * complex(mu).conjugate()
    t = q * q
    return _qpoch_inf(z * q ** (-4 * l), t, tol) / _qpoch_inf(z, t, tol)


def kernel_plus_coeff(k: int, l: float, q: float) -> float:
    """Taylor coefficient of kernel_plus in z = lam conj(mu):
    (q^{-4l}; q^2)_k / (q^2; q^2)_k."""
    t = q * q
    num = qpochhammer(q ** (-4 * l), t, k)
    den = qpochhammer(t, t, k)
    return (num / den).real


def kernel_strange(lam: complex, mu: complex, alpha: float, eps: float,
                   q: float) -> complex:
    """Annulus-realization overlap for the strange series (2 alpha + 1 in N):
    prefactor times the bilateral sum at argument lam conj(mu)."""
    r = abs(lam) * abs(mu)
    if not q ** (2 * (2 * alpha + 1)) < r < 1:
        raise ValueError("kernel_strange requires both points in the annulus")
    t = q * q
    a = q ** (-2 * (alpha + eps))
    b = q ** (2 * (alpha + 1 - eps))
    pref = _qpoch_inf(b, t, 1e-15) / _qpoch_inf(a, t, 1e-15)
    return pref * ramanujan_psi(a, b, t, lam * complex(mu).conjugate())


def kernel_strange_coeff(k: int, alpha: float, eps: float, q: float) -> float:
    t = q * q
    a = q ** (-2 * (alpha + eps))
    b = q ** (2 * (alpha + 1 - eps))
    pref = _qpoch_inf(b, t, 1e-15) / _qpoch_inf(a, t, 1e-15)
    return (pref * qpochhammer(a, t, k) / qpochhammer(b, t, k)).real


# ---------------------------------------------------------------------------
# Measures and reproducing checks
# ---------------------------------------------------------------------------

def measure_plus_atoms(l: float, q: float, tol: float = 1e-15,
                       max_atoms: int = 100000) -> list:
    """Atomic radial measure of the discrete series (l < -1/2):
    [(radius q^k, weight)] with weights summed until geometrically negligible."""
    if l >= -0.5:
        raise ValueError("the atomic measure requires l < -1/2")
    t = q * q
    pref = 1 - q ** (-2 * (2 * l - 1))
    atoms = []
    running = 0.0
    for k in range(max_atoms):
        w = pref * q ** (2 * k) * (_qpoch_inf(q ** (2 * (k + 1)), t, tol)
                                   / _qpoch_inf(q ** (2 * (k - 2 * l - 1)), t, tol))
        atoms.append((q ** k, w))
        running += abs(w)
        if abs(w) < tol * max(running, 1e-300):
            break
    return atoms


def measure_strange_atoms(alpha: float, eps: float, q: float) -> list:
    """The finitely many atoms of the strange-series measure: k = 0..2 alpha+1."""
    top = 2 * alpha + 1
    if abs(top - round(top)) > 1e-12 or round(top) < 1:
        raise ValueError("2 alpha + 1 must be a positive integer")
    t = q * q
    atoms = []
    for k in range(int(round(top)) + 1):
        w = (q ** (2 * k * (alpha + 1 - eps))
             * (qpochhammer(q ** (-2 * (2 * alpha + 1)), t, k) / qpochhammer(t, t, k)).real)
        atoms.append((q ** k, w))
    return atoms


def flat_disc_moment(k: int) -> float:
    """Radial moment of the flat disc measure at l = -1/2: pi/(k+1)."""
    return math.pi / (k + 1)


def radial_moment(atoms: list, j: int) -> float:
    """m_j = sum weights * r^{2j} (angular factor dropped consistently)."""
    return sum(w * r ** (2 * j) for r, w in atoms)


def measure_check(l: float, eps: float, q: float, N: int = 20) -> dict:
    """Moment/kernel consistency of the discrete-series measure:
    m_j c_j constant for j <= N (reproducing up to one overall constant)."""
    atoms = measure_plus_atoms(l, q)
    base = radial_moment(atoms, 0) * kernel_plus_coeff(0, l, q)
    worst = 0.0
    for j in range(N + 1):
        v = radial_moment(atoms, j) * kernel_plus_coeff(j, l, q)
        worst = max(worst, abs(v - base) / abs(base))
    return {"atoms": len(atoms), "base": base, "worst_rel_err": worst}


def measure_check_strange(alpha: float, eps: float, q: float, N: int = 10) -> dict:
    atoms = measure_strange_atoms(alpha, eps, q)
    base = radial_moment(atoms, 0) * kernel_strange_coeff(0, alpha, eps, q)
    worst = 0.0
    for j in range(-N, N + 1):
        v = radial_moment(atoms, j) * kernel_strange_coeff(j, alpha, eps, q)
        worst = max(worst, abs(v - base) / max(abs(base), 1e-300))
    return {"atoms": len(atoms), "base": base, "worst_rel_err": worst}


def reproduce_monomial(l: float, q: float, j: int, mu: complex,
                       angular: int = 64) -> complex:
    """Discrete series: integral of lam^j K(mu, lam) dnu(lam) / (m_0 c_0),
    the kernel evaluated through its product form and the angular part done
    by quadrature -- an independent path that must return mu^j."""
    atoms = measure_plus_atoms(l, q)
    base = radial_moment(atoms, 0) * kernel_plus_coeff(0, l, q)
    total = 0.0 + 0.0j
    for r, w in atoms:
        if w == 0:
            continue
        acc = 0.0 + 0.0j
        for s in range(angular):
            theta = 2 * math.pi * s / angular
            lam = r * cmath.exp(1j * theta)
            acc += lam ** j * kernel_plus(mu, lam, l, q)
        total += w * acc / angular
    return total / base


def reproduce_monomial_strange(alpha: float, eps: float, q: float, j: int,
                               mu: complex, angular: int = 64) -> complex:
    atoms = measure_strange_atoms(alpha, eps, q)
    base = radial_moment(atoms, 0) * kernel_strange_coeff(0, alpha, eps, q)
    total = 0.0 + 0.0j
    for r, w in atoms:
        if w == 0:
            continue
        acc = 0.0 + 0.0j
        for s in range(angular):
            theta = 2 * math.pi * s / angular
            lam = r * cmath.exp(1j * theta)
            acc += lam ** j * kernel_strange(mu, lam, alpha, eps, q)
        total += w * acc / angular
    return total / base
