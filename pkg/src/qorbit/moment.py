"""The quantum moment map: images of E_i, F_i, K_i as x-function multiples of
z_{i-1} zhat_i / z_i zhat_{i-1}, verified as operators on the induced modules.

The images used here are the ones forced by the module actions themselves:

  on the big module (all central characters mixed):
      E_i -> - x_0 x_i^{-1} y_i,
      F_i -> - q^{-1} x_0 (x_{i-1} x_{i+1})^{-1/2} yhat_i,
      K_i ->   x_i (x_{i-1} x_{i+1})^{-1/2},

  on the rank-1 induced module with central character (c0, d0), c0 d0 = 1
  (the *-compatible member of the same family of moment maps):
      E -> q^{1/2}/(q^{-1}-q) · y · x^{-3/2},
      F -> q^{3/2}/(q^{-1}-q) · yhat · x^{1/2},
      K -> x.

All square roots take the positive branch; a negative lattice (nu0 < 0) is
handled by composing with the sign automorphism (E -> -E), after which the
same formulas apply to |x|.

Residuals of relation checks are reported relative to the largest entry of
the composed words (the operators themselves have entries spanning many
orders of magnitude on a geometric lattice).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .coeffs import Frac, QCoeff, qpow, one
from . import uq
from .uq import automorphism_I
from .heis import WModule
from .funcx import XRing
from .series import RepParams, PiModule, casimir_value


# ---------------------------------------------------------------------------
# Symbolic images (rank-1 reduced form)
# ---------------------------------------------------------------------------

class MomentImage:
    """speclet bundling the x-function factor, the zhat/z word tag and the
    half-integer x-powers of a generator image; enough to print and to build
    operators, not a general sqrt-closed algebra."""

    def __init__(self, gen: str, prefactor: str, body: str):
        self.gen = gen
        self.prefactor = prefactor
        self.body = body

    def __repr__(self):
        return f"J({self.gen}) = {self.prefactor} * {self.body}"


def moment_map(gen: str, n: int = 1) -> MomentImage:
    """Printable image of a generator ('E','F','K', index via 'E2' etc.)."""
    kind = gen[0]
    i = int(gen[1:]) if len(gen) > 1 else 1
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range for rank {n}")
    if kind == "K":
        return MomentImage(gen, f"x{i} * (x{i-1}*x{i+1})^(-1/2)", "1")
    if kind == "E":
        return MomentImage(gen, f"-x0 * x{i}^(-1)", f"z{i-1}*zh{i}")
    if kind == "F":
        return MomentImage(gen, f"-q^(-1) * x0 * (x{i-1}*x{i+1})^(-1/2)", f"z{i}*zh{i-1}")
    raise ValueError(f"unknown generator {gen!r}")


def casimir_image(q: float, c0: complex, d0: complex) -> complex:
    """Scalar of the Casimir image on the (c0, d0) module."""
    return casimir_value(q, c0, d0)


def casimir_symbolic_identity() -> bool:
    """c0/d0 + d0/c0 - q - q^{-1} = (q^l - q^{-l})(q^{l+1} - q^{-l-1}) with
    c0 = q^{l+1/2}, d0 = q^{-l-1/2}, checked as Laurent polynomials in
    u = q^{1/2} and t = q^l."""
    V = ("u", "t")
    u = Frac.var(V, "u")
    t = Frac.var(V, "t")
    c0 = t * u
    d0 = (t * u).inv()
    lhs = c0 / d0 + d0 / c0 - u ** 2 - u ** -2
    rhs = (t - t.inv()) * (t * u ** 2 - (t * u ** 2).inv())
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# Operators on the rank-1 induced module
# ---------------------------------------------------------------------------

class PiMomentOps:
    """J-images as dense matrices on a PiModule window."""

    def __init__(self, params: RepParams, N: int = 12, kmin: int | None = None,
                 kmax: int | None = None):
        self.params = params
        self.pi = PiModule(params, N, kmin=kmin, kmax=kmax)
        q = params.q
        t = self.pi.xvals
        gamma = cmath.sqrt(complex(params.c0) * complex(params.d0))
        # for nu0 < 0 the square roots use |x| and J is composed with the
        # sign automorphism, which flips the E-image only
        sign = 1.0 if params.nu0 > 0 else -1.0
        tabs = np.abs(t)
        alpha0 = math.sqrt(q) / (1 / q - q)
        self.JE = (sign * alpha0) * self.pi.y_op() @ np.diag(tabs ** -1.5)
        self.JF = (q * alpha0 / gamma ** 2) * self.pi.yhat_op() @ np.diag(tabs ** 0.5)
        self.JK = np.diag(t / gamma)
        self.JKi = np.diag(gamma / t)

    def letter_matrix(self, letter) -> np.ndarray:
        if letter[0] == "E":
            return self.JE
        if letter[0] == "F":
            return self.JF
        base = self.JK if letter[2] > 0 else self.JKi
        m = np.eye(self.pi.dim, dtype=complex)
        for _ in range(abs(letter[2])):
            m = m @ base
        return m

    def element_matrix(self, a: "uq.AlgebraElement") -> np.ndarray:
        dim = self.pi.dim
        out = np.zeros((dim, dim), dtype=complex)
        for w, cf in a.terms.items():
            m = np.eye(dim, dtype=complex)
            for letter in w:
                m = m @ self.letter_matrix(letter)
            out += m * cf.evaluate(self.params.q)
        return out

    def casimir_matrix(self) -> np.ndarray:
        q = self.params.q
        w = (1 / q + q) / (2 * (1 / q - q) ** 2)
        eye = np.eye(self.pi.dim)
        return (0.5 * (self.JE @ self.JF + self.JF @ self.JE)
                + w * (self.JK - 2 * eye + self.JKi))


def casimir_operator_pi(pi: PiModule) -> np.ndarray:
    """Casimir image matrix on an existing module window."""
    ops = PiMomentOps(pi.params, 0, kmin=pi.kmin, kmax=pi.kmax)
    return ops.casimir_matrix()


def verify_relations_pi(params: RepParams, N: int = 12) -> dict:
    """Relative residual of every defining relation on the window interior."""
    ops = PiMomentOps(params, N)
    dim = ops.pi.dim
    interior = ops.pi.interior(3)
    worst = 0.0
    worst_name = None
    for name, rel in uq.defining_relations(1):
        acc = np.zeros((dim, dim), dtype=complex)
        scale = 1.0
        for w, cf in rel.terms.items():
            m = np.eye(dim, dtype=complex)
            for letter in w:
                m = m @ ops.letter_matrix(letter)
            m = m * cf.evaluate(params.q)
            acc += m
            scale = max(scale, float(np.max(np.abs(m[:, interior]))))
        resid = float(np.max(np.abs(acc[:, interior]))) / scale
        if resid > worst:
            worst, worst_name = resid, name
    return {"worst_residual": worst, "worst_relation": worst_name}


def casimir_check_pi(params: RepParams, N: int = 6) -> dict:
    """Casimir matrix is scalar on the interior and matches the image value.

    The residual is measured relative to the largest intermediate term
    (products of shift operators on the lattice span many orders of
    magnitude, so an absolute comparison would only reflect roundoff)."""
    ops = PiMomentOps(params, N)
    q = params.q
    scale = max(1.0, float(np.max(np.abs(ops.JE @ ops.JF))),
                float(np.max(np.abs(ops.JF @ ops.JE))))
    mat = ops.casimir_matrix()
    expect = casimir_image(q, params.c0, params.d0)
    interior = ops.pi.interior(2)
    acc = mat.copy()
    for i in range(ops.pi.dim):
        acc[i, i] -= expect
    resid = float(np.max(np.abs(acc[:, interior]))) / scale
    value_err = max(abs(mat[i, i] - expect) for i in interior) / max(abs(expect), 1e-30)
    return {"residual": resid, "scalar": expect, "value_rel_err": value_err}


def star_adjointness_pi(params: RepParams, N: int = 10) -> dict:
    """On a unitarizable real-pair module, J intertwines the natural
    involution with the Gram adjoint: J(E)^dagger = J(E^nat)."""
    from .series import gram_matrix, x_spectrum

    spec = x_spectrum(params)
    kmax = min(spec.kmax, N) if spec.kmax is not None else N
    kmin = max(spec.kmin, -N) if spec.kmin is not None else -N
    ops = PiMomentOps(params, N, kmin=kmin, kmax=kmax)
    gr = gram_matrix(params, N)
    diag = {k: v for k, v in gr.diag}
    ks = ops.pi.ks
    if not all(k in diag and diag[k] > 0 for k in ks):
        return {"applicable": False}
    G = np.diag([diag[k] for k in ks])
    Gi = np.diag([1 / diag[k] for k in ks])
    def adj(M):
        return Gi @ M.conj().T @ G
    iota = params.iota
    sgn = iota[0] * iota[1]
    if params.nu0 < 0:
        sgn = -sgn          # the rep is J composed with the sign automorphism
    ENat = sgn * ops.JKi @ ops.JKi @ ops.JF
    FNat = sgn * ops.JE @ ops.JK @ ops.JK
    inner = ops.pi.interior(3)
    def rel_res(A, B):
        sc = max(1.0, float(np.max(np.abs(B[np.ix_(inner, inner)]))))
        return float(np.max(np.abs((A - B)[np.ix_(inner, inner)]))) / sc
    return {
        "applicable": True,
        "E_residual": rel_res(adj(ops.JE), ENat),
        "F_residual": rel_res(adj(ops.JF), FNat),
    }


# ---------------------------------------------------------------------------
# Operators on the big module W (rank 1 and 2)
# ---------------------------------------------------------------------------

class WMomentOps:
    """Numeric J-image matrices on the truncated module of rank n at q0."""

    def __init__(self, n: int, N: int, q0: float):
        if not 0 < q0 < 1:
            raise ValueError("q must satisfy 0 < q < 1")
        self.n = n
        self.N = N
        self.q0 = q0
        self.W = WModule(n, N)
        dim = self.W.dim()
        self.dim = dim
        self._Z = {i: self._op_matrix(("z", i)) for i in range(n + 1)}
        self._Zh = {i: self._op_matrix(("zh", i)) for i in range(n + 1)}
        Cm = self._op_matrix(("C",))
        acc = (q0 / (q0 ** -1 - q0)) * Cm
        self.x = {}
        self.x[n + 1] = np.diag(acc).real.copy()
        for i in range(n, -1, -1):
            acc = self._Z[i] @ self._Zh[i] + acc
            xi = np.diag(acc).real.copy()
            off = float(np.max(np.abs(acc - np.diag(np.diag(acc)))))
            if off > 1e-12:
                raise AssertionError(f"x_{i} not diagonal on W (off {off})")
            self.x[i] = xi
        if any((self.x[i] <= 0).any() for i in self.x):
            raise AssertionError("nonpositive x eigenvalue on W")
        self.JE, self.JF, self.JK, self.JKi = {}, {}, {}, {}
        for i in range(1, n + 1):
            Yi = self._Z[i - 1] @ self._Zh[i]
            Yhi = self._Z[i] @ self._Zh[i - 1]
            self.JE[i] = Yi @ np.diag(-self.x[0] / self.x[i])
            root = np.sqrt(self.x[i - 1] * self.x[i + 1])
            self.JF[i] = Yhi @ np.diag(-(self.x[0] / q0) / root)
            self.JK[i] = np.diag(self.x[i] / root)
            self.JKi[i] = np.diag(root / self.x[i])

    def _op_matrix(self, op) -> np.ndarray:
        dim = self.W.dim()
        m = np.zeros((dim, dim), dtype=complex)
        cols = self.W.op_columns(op)
        for col in range(dim):
            for row, cf in cols[col]:
                m[row, col] += cf.evaluate(self.q0)
        return m

    def letter_matrix(self, letter, flip: set | None = None) -> np.ndarray:
        """flip holds indices i whose sqrt branch is negated (J after I_i)."""
        sign = -1.0 if flip and letter[1] in flip and letter[0] in ("E", "K") else 1.0
        if letter[0] == "E":
            return sign * self.JE[letter[1]]
        if letter[0] == "F":
            return self.JF[letter[1]]
        base = self.JK[letter[1]] if letter[2] > 0 else self.JKi[letter[1]]
        m = np.eye(self.dim, dtype=complex)
        for _ in range(abs(letter[2])):
            m = m @ (sign * base)
        return m

    def element_matrix(self, a: "uq.AlgebraElement", flip: set | None = None) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for w, cf in a.terms.items():
            m = np.eye(self.dim, dtype=complex)
            for letter in w:
                m = m @ self.letter_matrix(letter, flip)
            out += m * cf.evaluate(self.q0)
        return out

    def action_matrix(self, a: "uq.AlgebraElement") -> np.ndarray:
        """The direct module action, the independent side of the check."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for col in range(self.dim):
            vec = self.W.apply_algebra(a, {col: one})
            for row, cf in vec.items():
                out[row, col] += cf.evaluate(self.q0)
        return out

    def verify_relations(self, flip: set | None = None) -> dict:
        worst, worst_name = 0.0, None
        for name, rel in uq.defining_relations(self.n):
            acc = np.zeros((self.dim, self.dim), dtype=complex)
            scale = 1.0
            for w, cf in rel.terms.items():
                m = np.eye(self.dim, dtype=complex)
                for letter in w:
                    m = m @ self.letter_matrix(letter, flip)
                m = m * cf.evaluate(self.q0)
                acc += m
                scale = max(scale, float(np.max(np.abs(m))))
            resid = float(np.max(np.abs(acc))) / scale
            if resid > worst:
                worst, worst_name = resid, name
        return {"worst_residual": worst, "worst_relation": worst_name}

    def verify_intertwining(self, pairs=None) -> float:
        """J(ad_q(a) b) = sum J(a^(1)) J(b) J(S(a^(2))) on generator pairs."""
        g = uq.generators(self.n)
        if pairs is None:
            names = list(g)
            pairs = [(a, b) for a in names[:4] for b in names[:4]]
        worst = 0.0
        for an, bn in pairs:
            a, b = g[an], g[bn]
            lhs = self.element_matrix(uq.adjoint_action(a, b))
            rhs = np.zeros((self.dim, self.dim), dtype=complex)
            jb = self.element_matrix(b)
            for (w1, w2), cf in a.coproduct().pairs():
                left = self.element_matrix(uq.AlgebraElement(self.n, {w1: cf}))
                right = self.element_matrix(uq.AlgebraElement(self.n, {w2: one}).antipode())
                rhs += left @ jb @ right
            sc = max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / sc)
        return worst

    def verify_matches_action(self) -> float:
        """The J-images reproduce the direct twisted-derivation action."""
        g = uq.generators(self.n)
        worst = 0.0
        for name, a in g.items():
            lhs = self.element_matrix(a)
            rhs = self.action_matrix(a)
            sc = max(1.0, float(np.max(np.abs(rhs))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / sc)
        return worst
