"""The function algebra of the quantum G-space X in zeta-normal form.

Elements are finite sums  zeta^e · f(x)  with e an integer exponent vector
(zetahat_i is eliminated as zeta_i^{-1} · (x_{i-1}-x_i)/(x_i-q^{-2}x_{i+1})),
and f either an exact rational function in (q, c, d, x_1..x_n) or a finitely
supported function on a geometric lattice (used by the representation side).

x_0 = q^{-1} d and x_{n+1} = q c are central and live in the coefficients.

For n = 1 the full difference-operator action of E, F, K is provided; the
involutions are the real one (zeta_i^* = iota_{i-1} iota_i zetahat_i) and,
for complex-conjugate central characters, zeta -> zeta^{-1} with c <-> d.
"""

from __future__ import annotations

from .coeffs import Frac, Poly, QCoeff, qpow, one


class XRing:
    """Exact rational functions in q, c, d, x_1..x_n with lattice shifts."""

    def __init__(self, n: int):
        self.n = n
        self.vars = ("q", "c", "d") + tuple(f"x{i}" for i in range(1, n + 1))

    def const(self, value) -> Frac:
        if isinstance(value, QCoeff):
            return self.from_qcoeff(value)
        return Frac.const(self.vars, value)

    def var(self, name: str, power: int = 1) -> Frac:
        return Frac.var(self.vars, name, power)

    def x(self, i: int) -> Frac:
        """x_i including the central ends x_0 = q^{-1}d, x_{n+1} = qc."""
        if i == 0:
            return self.var("q", -1) * self.var("d")
        if i == self.n + 1:
            return self.var("q") * self.var("c")
        if not 1 <= i <= self.n:
            raise ValueError(f"x index {i} out of range")
        return self.var(f"x{i}")

    def from_qcoeff(self, a: QCoeff) -> Frac:
        if not a.is_exact:
            raise ValueError("numeric QCoeff cannot enter the exact x-ring")
        pad = (0,) * self.n
        num = Poly(self.vars, {e + pad: cf for e, cf in a.frac.num.terms.items()})
        den = Poly(self.vars, {e + pad: cf for e, cf in a.frac.den.terms.items()})
        return Frac(num, den, reduce=False)

    def shift(self, f: Frac, i: int, e: int) -> Frac:
        """Substitute x_i -> q^{2e} x_i (e may be negative)."""
        if e == 0 or (f.num.is_const() and f.den.is_const()):
            return f
        xi = 2 + i  # exponent slot of x_i
        num = f.num.substitute_exponent(xi, 0, 2 * e)
        den = f.den.substitute_exponent(xi, 0, 2 * e)
        low = min(min((ee[0] for ee in num.terms), default=0),
                  min((ee[0] for ee in den.terms), default=0))
        if low < 0:
            num = num.shift_exponents(0, -low)
            den = den.shift_exponents(0, -low)
        return Frac(num, den)

    def shift_vec(self, f: Frac, evec) -> Frac:
        for i, e in enumerate(evec, start=1):
            if e:
                f = self.shift(f, i, e)
        return f

    def swap_cd(self, f: Frac) -> Frac:
        def sw(p: Poly) -> Poly:
            return Poly(p.vars, {(e[0], e[2], e[1]) + e[3:]: cf for e, cf in p.terms.items()})
        return Frac(sw(f.num), sw(f.den))

    def evaluate(self, f: Frac, q0, c0, d0, xs) -> complex:
        values = {"q": complex(q0), "c": complex(c0), "d": complex(d0)}
        for i, v in enumerate(xs, start=1):
            values[f"x{i}"] = complex(v)
        return f.evaluate(values)


# ---------------------------------------------------------------------------
# Backends
# ---------------------------------------------------------------------------

class RationalBackend:
    """Exact rational functions of x over Q(q, c, d)."""

    exact = True

    def __init__(self, n: int):
        self.n = n
        self.ring = XRing(n)

    def one(self):
        return self.ring.const(1)

    def zero(self):
        return self.ring.const(0)

    def is_zero(self, f):
        return f.is_zero()

    def add(self, f, g):
        return f + g

    def neg(self, f):
        return -f

    def mul(self, f, g):
        return f * g

    def shift(self, f, evec):
        return self.ring.shift_vec(f, evec)

    def conj(self, f, swap_cd: bool = False):
        return self.ring.swap_cd(f) if swap_cd else f

    def scalar_mul(self, f, a: QCoeff):
        return self.mul(f, self.ring.from_qcoeff(a))

    def rational_mul(self, frac: Frac, f):
        return self.mul(frac, f)


class LatticeBackend:
    """Finitely supported complex functions on x_i = base_i * q^{2 k_i}."""

    exact = False

    def __init__(self, n: int, q0: float, c0: complex, d0: complex, base):
        self.n = n
        self.q0 = float(q0)
        self.c0 = complex(c0)
        self.d0 = complex(d0)
        self.base = tuple(complex(b) for b in base)
        self.ring = XRing(n)

    def point(self, key) -> tuple:
        return tuple(b * self.q0 ** (2 * k) for b, k in zip(self.base, key))

    def delta(self, key=None):
        key = tuple(key) if key is not None else (0,) * self.n
        return {key: 1.0 + 0.0j}

    def zero(self):
        return {}

    def is_zero(self, f):
        return not f

    def add(self, f, g):
        out = dict(f)
        for k, v in g.items():
            s = out.get(k, 0) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return out

    def neg(self, f):
        return {k: -v for k, v in f.items()}

    def mul(self, f, g):
        out = {}
        for k, v in f.items():
            w = g.get(k)
            if w is not None and v * w != 0:
                out[k] = v * w
        return out

    def shift(self, f, evec):
        """g(x) = f(q^{2 evec} x): value at key k is f at key k + evec."""
        return {tuple(a - e for a, e in zip(k, evec)): v for k, v in f.items()}

    def conj(self, f, swap_cd: bool = False):
        return {k: v.conjugate() for k, v in f.items()}

    def scalar_mul(self, f, a: QCoeff):
        z = a.evaluate(self.q0, self.c0, self.d0)
        return {k: v * z for k, v in f.items()}

    def eval_frac(self, frac: Frac, key) -> complex:
        return self.ring.evaluate(frac, self.q0, self.c0, self.d0, self.point(key))

    def rational_mul(self, frac: Frac, f):
        out = {}
        for k, v in f.items():
            w = v * self.eval_frac(frac, k)
            if w != 0:
                out[k] = w
        return out


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

class FuncXElement:
    """Sum of zeta^e f(x) terms over a fixed backend."""

    __slots__ = ("backend", "terms")

    def __init__(self, backend, terms: dict | None = None):
        self.backend = backend
        self.terms = {}
        if terms:
            for e, f in terms.items():
                if not backend.is_zero(f):
                    self.terms[e] = f

    @classmethod
    def from_function(cls, backend, f) -> "FuncXElement":
        return cls(backend, {(0,) * backend.n: f})

    @classmethod
    def zeta(cls, backend, i: int, power: int = 1) -> "FuncXElement":
        if not backend.exact:
            raise ValueError("build lattice elements from delta functions")
        e = [0] * backend.n
        e[i - 1] = power
        return cls(backend, {tuple(e): backend.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FuncXElement):
            return NotImplemented
        return (self - other).is_zero()

    def __add__(self, other):
        b = self.backend
        t = dict(self.terms)
        for e, f in other.terms.items():
            g = t.get(e)
            g = f if g is None else b.add(g, f)
            if b.is_zero(g):
                t.pop(e, None)
            else:
                t[e] = g
        return FuncXElement(b, t)

    def __neg__(self):
        b = self.backend
        return FuncXElement(b, {e: b.neg(f) for e, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "FuncXElement":
        b = self.backend
        if isinstance(a, QCoeff):
            return FuncXElement(b, {e: b.scalar_mul(f, a) for e, f in self.terms.items()})
        if b.exact:
            fa = b.ring.const(a)
            return FuncXElement(b, {e: b.mul(f, fa) for e, f in self.terms.items()})
        z = complex(a)
        return FuncXElement(b, {e: {k: v * z for k, v in f.items()} for e, f in self.terms.items()})

    def rational_mul_left(self, frac: Frac) -> "FuncXElement":
        """h(x) · (zeta^e f) = zeta^e · h(q^{-2e} x) f."""
        b = self.backend
        out = {}
        for e, f in self.terms.items():
            shifted = b.ring.shift_vec(frac, tuple(-a for a in e))
            g = b.rational_mul(shifted, f)
            if not b.is_zero(g):
                out[e] = g
        return FuncXElement(b, out)

    def rational_mul_right(self, frac: Frac) -> "FuncXElement":
        b = self.backend
        out = {}
        for e, f in self.terms.items():
            g = b.rational_mul(frac, f)
            if not b.is_zero(g):
                out[e] = g
        return FuncXElement(b, out)

    def zeta_mul_right(self, i: int, p: int = 1) -> "FuncXElement":
        """(zeta^e f) zeta_i^p = q^sigma zeta^{e + p e_i} f(q^{-2p} x_i ...)."""
        b = self.backend
        out = {}
        for e, f in self.terms.items():
            sigma = -(e[i] * p if i < b.n else 0)  # e_{i+1} g_i term with g = p e_i
            ne = list(e)
            ne[i - 1] += p
            evec = [0] * b.n
            evec[i - 1] = -p
            g = b.shift(f, tuple(evec))
            if sigma:
                g = b.scalar_mul(g, qpow(sigma))
            key = tuple(ne)
            prev = out.get(key)
            g = g if prev is None else b.add(prev, g)
            if b.is_zero(g):
                out.pop(key, None)
            else:
                out[key] = g
        return FuncXElement(b, out)

    def __mul__(self, other):
        if not isinstance(other, FuncXElement):
            return self.scale(other)
        b = self.backend
        out: dict = {}
        for e1, f1 in self.terms.items():
            for e2, f2 in other.terms.items():
                # (zeta^e1 f1)(zeta^e2 f2) = q^sigma zeta^{e1+e2} f1(q^{-2 e2} x) f2
                sigma = -sum(e1[i] * e2[i - 1] for i in range(1, b.n))
                e = tuple(a + c for a, c in zip(e1, e2))
                g = b.mul(b.shift(f1, tuple(-a for a in e2)), f2)
                if sigma:
                    g = b.scalar_mul(g, qpow(sigma))
                if b.is_zero(g):
                    continue
                prev = out.get(e)
                g = g if prev is None else b.add(prev, g)
                if b.is_zero(g):
                    out.pop(e, None)
                else:
                    out[e] = g
        return FuncXElement(b, out)

    # -- involutions

    def star(self, iota: tuple | None = None) -> "FuncXElement":
        """Real involution: zeta_i^* = iota_{i-1} iota_i zetahat_i, x_i^* = x_i."""
        b = self.backend
        if not b.exact:
            raise ValueError("star is a symbolic operation; use the exact backend")
        if iota is None:
            iota = (1,) * (b.n + 1)
        out = FuncXElement(b)
        for e, f in self.terms.items():
            term = FuncXElement.from_function(b, b.conj(f))
            for i in range(b.n, 0, -1):
                p = e[i - 1]
                if p == 0:
                    continue
                letter = zeta_hat_element(b, i, invert=p < 0)
                for _ in range(abs(p)):
                    term = term * letter
                if iota[i - 1] * iota[i] < 0 and p % 2:
                    term = -term
            out = out + term
        return out

    def star_complex(self) -> "FuncXElement":
        """Complex-character involution: zeta -> zeta^{-1}, x -> x, c <-> d."""
        b = self.backend
        out: dict = {}
        for e, f in self.terms.items():
            ne = tuple(-a for a in e)
            g = b.shift(b.conj(f, swap_cd=True), e)
            prev = out.get(ne)
            g = g if prev is None else b.add(prev, g)
            if b.is_zero(g):
                out.pop(ne, None)
            else:
                out[ne] = g
        return FuncXElement(b, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            zs = "*".join(f"zeta{i+1}^{p}" for i, p in enumerate(e) if p) or "1"
            parts.append(f"{zs}*[{self.terms[e]}]")
        return " + ".join(parts)


def zeta_hat_element(backend, i: int, invert: bool = False) -> FuncXElement:
    """zetahat_i = zeta_i^{-1} (x_{i-1}-x_i)/(x_i - q^{-2} x_{i+1}), or its inverse."""
    ring = backend.ring
    g = (ring.x(i - 1) - ring.x(i)) / (ring.x(i) - ring.var("q", -2) * ring.x(i + 1))
    e = [0] * backend.n
    if not invert:
        e[i - 1] = -1
        return FuncXElement(backend, {tuple(e): backend.one()}).rational_mul_right(g)
    e[i - 1] = 1
    return FuncXElement(backend, {tuple(e): backend.one()}).rational_mul_left(g.inv())


# ---------------------------------------------------------------------------
# n = 1: difference-operator action and the specialized algebra
# ---------------------------------------------------------------------------

class Sl2FuncX:
    """Func(X)_q for n = 1: generators zeta^{±1} and functions of x = x_1."""

    def __init__(self, backend):
        if backend.n != 1:
            raise ValueError("Sl2FuncX requires n = 1")
        self.backend = backend
        self.ring = backend.ring

    # -- building blocks

    def zeta(self, power: int = 1) -> FuncXElement:
        return FuncXElement.zeta(self.backend, 1, power)

    def f(self, frac: Frac) -> FuncXElement:
        return FuncXElement.from_function(self.backend, frac)

    def delta(self, key: int = 0, zeta_power: int = 0) -> FuncXElement:
        return FuncXElement(self.backend, {(zeta_power,): self.backend.delta((key,))})

    def from_lattice(self, values: dict, zeta_power: int = 0) -> FuncXElement:
        return FuncXElement(self.backend,
                            {(zeta_power,): {(k,): complex(v) for k, v in values.items()}})

    def x(self) -> Frac:
        return self.ring.x(1)

    def y(self) -> FuncXElement:
        """y = (q x - c) zeta."""
        return self.zeta().rational_mul_left(self.ring.var("q") * self.x() - self.ring.var("c"))

    def yhat(self) -> FuncXElement:
        """yhat = zetahat (q x - c) = zeta^{-1} · (-(q x - d))."""
        return self.zeta(-1).rational_mul_right(-(self.ring.var("q") * self.x() - self.ring.var("d")))

    def zeta_star(self, iota=(-1, 1)) -> FuncXElement:
        return self.zeta().star(iota)

    def mul_y(self, elt: FuncXElement) -> FuncXElement:
        """Right multiplication by y, valid on both backends."""
        b = self.backend
        qx_c = self.ring.var("q") * self.x() - self.ring.var("c")
        out = {}
        for (k,), f in elt.terms.items():
            g = b.shift(b.rational_mul(qx_c, f), (-1,))
            if not b.is_zero(g):
                out[(k + 1,)] = g
        return FuncXElement(b, out)

    def mul_yhat(self, elt: FuncXElement) -> FuncXElement:
        """Right multiplication by yhat = zeta^{-1}(-(qx - d))."""
        b = self.backend
        m_qx_d = -(self.ring.var("q") * self.x() - self.ring.var("d"))
        out = {}
        for (k,), f in elt.terms.items():
            g = b.rational_mul(m_qx_d, b.shift(f, (1,)))
            if not b.is_zero(g):
                out[(k - 1,)] = g
        return FuncXElement(b, out)

    # -- U_q action by difference operators

    def act(self, gen: str, elt: FuncXElement) -> FuncXElement:
        """gen in {'E','F','K','Kinv'} acting on a normal-form element."""
        b = self.backend
        out = FuncXElement(b)
        for (k,), f in elt.terms.items():
            zf = FuncXElement(b, {(k,): f})
            if gen in ("K", "Kinv"):
                s = -2 * k if gen == "K" else 2 * k
                out = out + zf.scale(qpow(s))
                continue
            if gen == "E":
                # E(zeta^k f) = E(zeta^k) f + q^{2k} zeta^k E(f)
                if k:
                    coeff = -qpow(1) * (one - qpow(2 * k)) / (one - qpow(2))
                    out = out + FuncXElement(b, {(k + 1,): f}).scale(coeff)
                df = self._difference_E(f)
                if not b.is_zero(df):
                    out = out + self.mul_y(FuncXElement(b, {(k,): df})).scale(qpow(2 * k))
            else:
                # F(zeta^k f) = F(zeta^k) K(f) + zeta^k F(f); K fixes f(x)
                if k:
                    coeff = (qpow(-2 * k) - one) / (qpow(-2) - one)
                    out = out + FuncXElement(b, {(k - 1,): f}).scale(coeff)
                df = self._difference_F(f)
                if not b.is_zero(df):
                    # the -q normalizes the displayed difference operator to the
                    # action F(x) = -q yhat forced by the z-level formulas
                    out = out + self.mul_yhat(FuncXElement(b, {(k,): df})).scale(-qpow(1))
        return out

    def _difference_E(self, f):
        """(f - f(q^2 x)) / (x - q^2 x)."""
        b = self.backend
        num = b.add(f, b.neg(b.shift(f, (1,))))
        if b.is_zero(num):
            return b.zero()
        if b.exact:
            return b.mul(num, (self.x() * (self.ring.const(1) - self.ring.var("q", 2))).inv())
        return {key: v / (b.point(key)[0] * (1 - b.q0 ** 2)) for key, v in num.items()}

    def _difference_F(self, f):
        """(f(q^{-2} x) - f) / (q^{-2} x - x)."""
        b = self.backend
        num = b.add(b.shift(f, (-1,)), b.neg(f))
        if b.is_zero(num):
            return b.zero()
        if b.exact:
            return b.mul(num, (self.x() * (self.ring.var("q", -2) - self.ring.const(1))).inv())
        return {key: v / (b.point(key)[0] * (b.q0 ** -2 - 1)) for key, v in num.items()}

    def act_element(self, a, elt: FuncXElement) -> FuncXElement:
        """Action of a rank-1 uq.AlgebraElement by letter composition."""
        out = FuncXElement(self.backend)
        for w, cf in a.terms.items():
            v = elt
            for letter in reversed(w):
                if letter[0] == "K":
                    g = "K" if letter[2] > 0 else "Kinv"
                    for _ in range(abs(letter[2])):
                        v = self.act(g, v)
                else:
                    v = self.act(letter[0], v)
            out = out + v.scale(cf)
        return out


def phi_of(t: FuncXElement, gamma: Frac) -> FuncXElement:
    """Phi(t) = (1 - gamma t)/(1 - t) for a pure function-of-x element."""
    b = t.backend
    if not b.exact:
        raise ValueError("Phi identity is a symbolic check")
    (key, f), = t.terms.items()
    if any(key):
        raise ValueError("Phi applies to functions of x only")
    num = b.ring.const(1) - gamma * f
    den = b.ring.const(1) - f
    return FuncXElement.from_function(b, num / den)


def xcd_checks(iota=(-1, 1)) -> dict:
    """Specialized n=1 relations of the central-character algebra, symbolically:
    zeta zeta*, zeta* zeta against their rational forms, and the Phi identity."""
    b = RationalBackend(1)
    n1 = Sl2FuncX(b)
    ring = n1.ring
    q, c, d, x = ring.var("q"), ring.var("c"), ring.var("d"), ring.x(1)
    zs = n1.zeta_star(iota)
    prod1 = n1.zeta() * zs
    prod2 = zs * n1.zeta()
    expect1 = FuncXElement.from_function(b, (x - q ** -1 * d) / (x - q ** -1 * c))
    expect2 = FuncXElement.from_function(b, (x - q * d) / (x - q * c))
    gamma = c / d
    phi_holds = (phi_of(prod1, gamma) - phi_of(prod2, gamma).scale(qpow(2))).is_zero()
    return {
        "zeta_zetastar_ok": prod1 == expect1,
        "zetastar_zeta_ok": prod2 == expect2,
        "phi_identity_ok": phi_holds,
        "zeta_zetastar": prod1,
        "zetastar_zeta": prod2,
    }
