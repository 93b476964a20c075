"""Induced rank-1 modules on the geometric lattice, their x-spectra, Gram
forms, invariant integrals, and the classification of the resulting
irreducible *-representations.

The module has basis zeta^k · cyclic vector; x acts diagonally with
eigenvalue nu0 q^{-2k}, zeta shifts up, and

    y  : k -> k+1 with weight q^{-2k-1} nu0 - c0,
    yhat: k -> k-1 with weight -(q^{1-2k} nu0 - d0).

Everything numeric is double precision; positivity and membership tests used
for classification are performed with relative tolerance 1e-9.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coeffs import qpow, one
from . import uq
from .funcx import LatticeBackend, Sl2FuncX, FuncXElement

_REL_TOL = 1e-9


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class RepParams:
    """(q, c0, d0, nu0) with c0 d0 = 1; c0, d0 real positive (c0 <= d0) or a
    complex-conjugate pair; nu0 real nonzero.  iota is fixed at (-1, 1)."""

    q: float
    c0: complex
    d0: complex
    nu0: float
    iota: tuple = (-1, 1)

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise ParameterError("q must satisfy 0 < q < 1")
        if abs(self.c0 * self.d0 - 1) > 1e-9:
            raise ParameterError("c0 d0 = 1 is required")
        if self.nu0 == 0 or abs(complex(self.nu0).imag) > 1e-12:
            raise ParameterError("nu0 must be real and nonzero")
        if self.is_real_pair:
            if not (self.c0.real > 0 and self.d0.real > 0):
                raise ParameterError("real c0, d0 must be positive")
            if self.c0.real > self.d0.real + 1e-12:
                raise ParameterError("real case requires c0 <= d0")
        elif abs(self.c0 - self.d0.conjugate()) > 1e-9:
            raise ParameterError("complex c0, d0 must be conjugate")

    @property
    def is_real_pair(self) -> bool:
        return abs(complex(self.c0).imag) <= 1e-12 and abs(complex(self.d0).imag) <= 1e-12


def _lattice_index(params: RepParams, value: float):
    """k with value = nu0 q^{2k} if it exists (value and nu0 same sign)."""
    v, nu0 = float(value), params.nu0
    if v * nu0 <= 0:
        return None
    k = math.log(v / nu0) / (2 * math.log(params.q))
    kr = round(k)
    if abs(k - kr) < 1e-7:
        return int(kr)
    return None


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumDescriptor:
    """The x-spectrum of the component of the cyclic vector.

    kind "plus" is the downward set topped at q c0 (the classical M_+),
    "minus" the upward set bottomed at q^{-1} d0 (M_-); the mirror kinds are
    the partner components topped at q d0 / bottomed at q^{-1} c0, which
    occur when the other wall's lattice membership holds but nu0 sits on the
    far side; "finite" has both walls.  Indices are zeta-powers k relative to
    the cyclic vector (eigenvalue nu0 q^{-2k}).
    """

    kind: str              # full | plus | minus | plus_mirror | minus_mirror | finite
    kmax: int | None       # top wall index (inclusive), None if unbounded
    kmin: int | None       # bottom wall index (inclusive), None if unbounded
    params: RepParams

    def includes_zero(self) -> bool:
        return self.kmax is None

    def points(self, count: int) -> list:
        q, nu0 = self.params.q, self.params.nu0
        if self.kmax is not None and self.kmin is not None:
            return [nu0 * q ** (-2 * k) for k in range(self.kmax, self.kmin - 1, -1)]
        if self.kmax is not None:
            return [nu0 * q ** (-2 * (self.kmax - j)) for j in range(count)]
        if self.kmin is not None:
            return [nu0 * q ** (-2 * (self.kmin + j)) for j in range(count)]
        half = count // 2
        return [nu0 * q ** (2 * k) for k in range(-half, count - half)]


def x_spectrum(params: RepParams) -> SpectrumDescriptor:
    """Walls of the cyclic vector's component.

    Stepping up is blocked above a pole of r(x) = (x - q d0)/(x - q c0)
    (top at q c0) and gives null vectors above its zero (top at q d0);
    stepping down is blocked below x = q^{-1} d0 and null below q^{-1} c0.
    A wall exists when the value lies on the lattice of nu0.
    """
    if not params.is_real_pair:
        return SpectrumDescriptor("full", None, None, params)
    c0, d0, q = params.c0.real, params.d0.real, params.q
    # positive k means smaller x in our indexing (eigenvalue nu0 q^{-2k});
    # the top wall has the *largest* x hence the largest k >= 0 direction:
    # x = nu0 q^{-2k} -> k = index of the wall value
    tops = []
    for val, tag in ((q * c0, "c"), (q * d0, "d")):
        k = _lattice_index_neg(params, val)
        if k is not None and k >= 0:
            tops.append((k, tag))
    bottoms = []
    for val, tag in ((d0 / q, "d"), (c0 / q, "c")):
        k = _lattice_index_neg(params, val)
        if k is not None and k <= 0:
            bottoms.append((k, tag))
    top = min(tops) if tops else None
    bottom = max(bottoms) if bottoms else None
    if top is not None and bottom is not None:
        return SpectrumDescriptor("finite", top[0], bottom[0], params)
    if top is not None:
        kind = "plus" if top[1] == "c" else "plus_mirror"
        return SpectrumDescriptor(kind, top[0], None, params)
    if bottom is not None:
        kind = "minus" if bottom[1] == "d" else "minus_mirror"
        return SpectrumDescriptor(kind, None, bottom[0], params)
    return SpectrumDescriptor("full", None, None, params)


def _lattice_index_neg(params: RepParams, value: float):
    """k with value = nu0 q^{-2k} (the zeta-power convention)."""
    k = _lattice_index(params, value)
    return None if k is None else -k


# ---------------------------------------------------------------------------
# Operators on the induced module
# ---------------------------------------------------------------------------

class PiModule:
    """Dense operator window: basis zeta^k, k in [kmin, kmax]."""

    def __init__(self, params: RepParams, N: int, kmin: int | None = None,
                 kmax: int | None = None):
        self.params = params
        if kmin is None:
            kmin, kmax = -N, N
        self.kmin, self.kmax = kmin, kmax
        self.ks = list(range(kmin, kmax + 1))
        self.dim = len(self.ks)
        q, nu0 = params.q, params.nu0
        self.xvals = np.array([nu0 * q ** (-2 * k) for k in self.ks], dtype=complex)

    def _shift_matrix(self, delta: int, weight) -> np.ndarray:
        m = np.zeros((self.dim, self.dim), dtype=complex)
        for col, k in enumerate(self.ks):
            row = col + delta
            if 0 <= row < self.dim:
                m[row, col] = weight(k)
        return m

    def x_op(self) -> np.ndarray:
        return np.diag(self.xvals)

    def zeta_op(self, power: int = 1) -> np.ndarray:
        return self._shift_matrix(power, lambda k: 1.0)

    def y_op(self) -> np.ndarray:
        q, nu0, c0 = self.params.q, self.params.nu0, self.params.c0
        return self._shift_matrix(1, lambda k: q ** (-2 * k - 1) * nu0 - c0)

    def yhat_op(self) -> np.ndarray:
        q, nu0, d0 = self.params.q, self.params.nu0, self.params.d0
        return self._shift_matrix(-1, lambda k: -(q ** (1 - 2 * k) * nu0 - d0))

    def interior(self, radius: int) -> list:
        """Column indices whose +-radius neighbourhood stays in the window."""
        return [i for i in range(self.dim) if radius <= i < self.dim - radius]


# ---------------------------------------------------------------------------
# Gram form
# ---------------------------------------------------------------------------

@dataclass
class GramResult:
    diag: list                    # (k, value or None) for excluded
    positive: bool                # positive-definite on the realized component
    truncated_kind: str           # "full" | "plus" | "minus"
    component: tuple              # (kmin, kmax) of realized indices, inf as None


def _step_ratio(params: RepParams, x: complex) -> complex:
    q, c0, d0 = params.q, params.c0, params.d0
    return (x - q * d0) / (x - q * c0)


def gram_matrix(params: RepParams, N: int) -> GramResult:
    """Diagonal Gram entries (zeta^k 1, zeta^k 1) = nu((zeta^k)^* zeta^k).

    Real case: the two-sided recursion G_{k+1} = G_k * r(nu0 q^{-2k}),
    r(x) = (x - q d0)/(x - q c0), anchored at the cyclic vector and walked
    within the walls of the component (see x_spectrum).
    Complex-conjugate case: the star-involution gives G_k = 1 identically.
    """
    q = params.q
    if not params.is_real_pair:
        return GramResult([(k, 1.0) for k in range(-N, N + 1)], True, "full", (-N, N))

    spec = x_spectrum(params)
    nu0 = params.nu0
    hi = spec.kmax if spec.kmax is not None else N
    lo = spec.kmin if spec.kmin is not None else -N
    diag = [(0, 1.0)]
    g = 1.0
    for k in range(0, hi):
        g = g * _step_ratio(params, nu0 * q ** (-2 * k)).real
        diag.append((k + 1, g))
    g = 1.0
    for k in range(0, lo, -1):
        g = g / _step_ratio(params, nu0 * q ** (-2 * (k - 1))).real
        diag.append((k - 1, g))
    diag.sort()
    positive = all(v > 0 for _, v in diag)
    return GramResult(diag, positive, spec.kind, (lo, hi))


def gap_condition_holds(params: RepParams) -> bool:
    """No point of the realized component lies in the open interval
    (q c0, q d0): the geometric side of the unitarity dichotomy."""
    if not params.is_real_pair:
        return True
    q, nu0 = params.q, params.nu0
    c0, d0 = params.c0.real, params.d0.real
    lo, hi = q * c0, q * d0
    if nu0 < 0 or hi - lo <= 0:
        return True
    spec = x_spectrum(params)
    # candidate k-window around the interval (k indexes nu0 q^{-2k})
    k_lo = math.floor(-math.log(hi / nu0) / (2 * math.log(q))) - 2
    k_hi = math.ceil(-math.log(lo / nu0) / (2 * math.log(q))) + 2
    for k in range(min(k_lo, k_hi) - 1, max(k_lo, k_hi) + 2):
        if spec.kmax is not None and k > spec.kmax:
            continue
        if spec.kmin is not None and k < spec.kmin:
            continue
        x = nu0 * q ** (-2 * k)
        if lo * (1 + _REL_TOL) < x < hi * (1 - _REL_TOL):
            return False
    return True


def unitarizable(params: RepParams) -> bool:
    """Theorem-side verdict: the realized component avoids the open gap."""
    return gap_condition_holds(params)


# ---------------------------------------------------------------------------
# Invariant integral
# ---------------------------------------------------------------------------

def lattice_backend(params: RepParams) -> LatticeBackend:
    return LatticeBackend(1, params.q, params.c0, params.d0, (params.nu0,))

def spectrum_indices(params: RepParams, N: int) -> list:
    """Lattice indices j (point nu0 q^{2j}) of the realized spectrum window."""
    spec = x_spectrum(params)
    j_lo = -spec.kmax if spec.kmax is not None else -N
    j_hi = -spec.kmin if spec.kmin is not None else N
    return list(range(j_lo, min(j_hi, j_lo + 2 * N) + 1))


def invariant_integral(params: RepParams, f: dict, zeta_power: int = 0,
                       N: int = 60) -> complex:
    """integral( zeta^power f(x) ) = delta_{power,0} (q^{-1}-q) sum x f(x)
    over the realized spectrum; f maps lattice index j -> value at nu0 q^{2j}."""
    if zeta_power != 0:
        return 0.0
    q, nu0 = params.q, params.nu0
    allowed = set(spectrum_indices(params, N))
    total = 0.0 + 0.0j
    for j, v in f.items():
        if v == 0:
            continue
        if j not in allowed:
            raise ValueError(f"support index {j} outside the realized spectrum")
        total += nu0 * q ** (2 * j) * v
    return (q ** -1 - q) * total


def integral_of_element(params: RepParams, elt: FuncXElement, N: int = 60) -> complex:
    """Apply the invariant integral to a normal-form lattice element."""
    total = 0.0 + 0.0j
    for (k,), f in elt.terms.items():
        if k != 0:
            continue
        total += invariant_integral(params, {j[0]: v for j, v in f.items()}, 0, N)
    return total


def check_integral_invariance(params: RepParams, f: dict, N: int = 60) -> dict:
    """|integral(a f) - eps(a) integral(f)| for a in {E, F, K}."""
    fx = Sl2FuncX(lattice_backend(params))
    elt = fx.from_lattice(f)
    base = integral_of_element(params, elt, N)
    out = {}
    for gen, eps in (("E", 0.0), ("F", 0.0), ("K", 1.0)):
        acted = fx.act(gen, elt)
        val = integral_of_element(params, acted, N)
        out[gen] = abs(val - eps * base)
    out["baseline"] = abs(base)
    return out


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesLabel:
    series: str
    l: complex
    epsilon: float
    casimir: complex


SERIES_NAMES = ("PrincipalContinuous", "Complimentary", "HolomorphicDiscrete",
                "AntiHolomorphicDiscrete", "Strange", "NonUnitarizable")


def casimir_value(q: float, c0: complex, d0: complex) -> complex:
    """((c0/d0)^{1/2} + (d0/c0)^{1/2} - q - q^{-1}) / (q^{-1} - q)^2.

    This is the scalar by which the image of the quadratic Casimir acts on
    the induced module built from (c0, d0); it carries square roots of the
    ratio (the ratio itself would belong to the module built from the
    squared parameters).
    """
    root = cmath.sqrt(complex(c0) / complex(d0))
    return (root + 1 / root - q - 1 / q) / (1 / q - q) ** 2


def casimir_from_l(q: float, l: complex) -> complex:
    """(q^l - q^{-l})(q^{l+1} - q^{-l-1}) / (q^{-1} - q)^2."""
    lq = math.log(q)
    ql = cmath.exp(l * lq)
    qlp = cmath.exp((l + 1) * lq)
    return (ql - 1 / ql) * (qlp - 1 / qlp) / (1 / q - q) ** 2


def spin_l(params: RepParams) -> complex:
    """l with (c0/d0)^{1/2} = q^{2l+1} (so c0 = q^{2l+1} when c0 d0 = 1);
    the strange series carries the extra imaginary part pi/log q."""
    q = params.q
    gamma = cmath.sqrt(complex(params.c0) / complex(params.d0))
    l = (cmath.log(gamma) / math.log(q) - 1) / 2
    if params.is_real_pair and params.nu0 < 0:
        l += 1j * math.pi / math.log(q)
    return l


def parity_epsilon(params: RepParams) -> float:
    """Fractional part of log_q |nu0| reduced into (-1/2, 1/2]."""
    t = math.log(abs(params.nu0)) / math.log(params.q)
    frac = t - math.floor(t)
    if frac > 0.5 + 1e-12:
        frac -= 1.0
    return frac


def classify(params: RepParams) -> SeriesLabel:
    q = params.q
    l = spin_l(params)
    eps = parity_epsilon(params)
    cas = casimir_value(q, params.c0, params.d0)
    if not params.is_real_pair:
        return SeriesLabel("PrincipalContinuous", l, eps, cas)
    if not gap_condition_holds(params):
        return SeriesLabel("NonUnitarizable", l, eps, cas)
    spec = x_spectrum(params)
    if spec.kind in ("plus", "plus_mirror", "finite"):
        return SeriesLabel("HolomorphicDiscrete", l, eps, cas)
    if spec.kind in ("minus", "minus_mirror"):
        return SeriesLabel("AntiHolomorphicDiscrete", l, eps, cas)
    name = "Complimentary" if params.nu0 > 0 else "Strange"
    return SeriesLabel(name, l, eps, cas)


def casimir_spectrum_check(params: RepParams, N: int = 20) -> dict:
    """pi(J(C_q)) acts as the scalar (J-C) on the truncation interior."""
    from .moment import casimir_operator_pi

    pi = PiModule(params, N)
    mat = casimir_operator_pi(pi)
    scalar = casimir_value(params.q, params.c0, params.d0)
    interior = pi.interior(2)
    resid = 0.0
    for col in interior:
        colvec = mat[:, col].copy()
        colvec[col] -= scalar
        resid = max(resid, float(np.max(np.abs(colvec))))
    return {"scalar": scalar, "residual": resid}
