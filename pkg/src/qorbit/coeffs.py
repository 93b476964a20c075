"""Exact coefficient arithmetic: rational functions in q (and c, d) over Q.

Everything downstream (relation checking, normal forms, Gram matrices) relies
on equality-to-zero being decidable, so fractions are kept in canonical
reduced form: gcd(num, den) = 1, integer contents coprime, and the leading
coefficient of the denominator positive.

Coefficients of polynomials are Python ints; rational numbers live at the
fraction level.  A QCoeff is either an exact fraction in (q, c, d) or a plain
complex number ("numeric" kind) for floating-point pipelines.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from operator import add as _iadd


class CoeffError(ArithmeticError):
    pass


class ParameterCollisionError(CoeffError, ZeroDivisionError):
    """Division by an exactly-zero quantity, typically two parameters colliding."""


class PoleError(CoeffError, ZeroDivisionError):
    """Evaluation at a point where the denominator vanishes."""


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials over Z
# ---------------------------------------------------------------------------

class Poly:
    """Sparse polynomial with int coefficients in a fixed tuple of variables.

    terms maps exponent tuples to nonzero ints.  Instances are immutable by
    convention; all operations return fresh objects.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict):
        self.vars = vars
        self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors

    @classmethod
    def const(cls, vars, n: int) -> "Poly":
        z = (0,) * len(vars)
        return cls(vars, {z: int(n)} if n else {})

    @classmethod
    def var(cls, vars, name: str, power: int = 1) -> "Poly":
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(vars, {tuple(e): 1})

    # -- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        return not any(next(iter(self.terms)))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.vars)) == 1

    def const_value(self) -> int:
        if not self.terms:
            return 0
        return self.terms[(0,) * len(self.vars)]

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Poly(self.vars, t)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        a, b = self.terms, other.terms
        if len(a) > 1 and len(b) == 1:
            a, b = b, a
        if len(a) == 1:
            (e1, c1), = a.items()
            if not any(e1):
                return Poly(self.vars, {e: c1 * c2 for e, c2 in b.items()})
            return Poly(self.vars,
                        {tuple(map(_iadd, e1, e2)): c1 * c2 for e2, c2 in b.items()})
        t: dict = {}
        get = t.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(_iadd, e1, e2))
                s = get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power on Poly; use Frac")
        r = Poly.const(self.vars, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    # -- structure helpers

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = int_gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    def map_coeff(self, f) -> "Poly":
        return Poly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def lead(self) -> tuple:
        """Lex-leading (exponent, coefficient)."""
        e = max(self.terms)
        return e, self.terms[e]

    def shift_exponents(self, i: int, delta: int) -> "Poly":
        """Multiply by vars[i]**delta (delta may be negative if degrees allow)."""
        t = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += delta
            if ne[i] < 0:
                raise ValueError("negative exponent in Poly")
            t[tuple(ne)] = c
        return Poly(self.vars, t)

    def substitute_exponent(self, i: int, j: int, factor: int) -> "Poly":
        """Exponent transfer e_j += factor * e_i used for shifts like x -> q^2k x."""
        t: dict = {}
        for e, cf in self.terms.items():
            ne = list(e)
            ne[j] += factor * e[i]
            key = tuple(ne)
            s = t.get(key, 0) + cf
            if s:
                t[key] = s
            else:
                t.pop(key, None)
        return Poly(self.vars, t)

    # -- division / gcd

    def divide_exact(self, g: "Poly"):
        """Return self / g if g divides exactly, else None (lex long division)."""
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        rem = dict(self.terms)
        ge, gc = g.lead()
        out: dict = {}
        while rem:
            re = max(rem)
            rc = rem[re]
            qe = tuple(a - b for a, b in zip(re, ge))
            if any(x < 0 for x in qe) or rc % gc:
                return None
            qc = rc // gc
            out[qe] = qc
            for e2, c2 in g.terms.items():
                e = tuple(a + b for a, b in zip(qe, e2))
                s = rem.get(e, 0) - qc * c2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return Poly(self.vars, out)

    def _to_univar(self, i: int) -> dict:
        """View as univariate in vars[i]: {power: Poly-in-others}."""
        out: dict = {}
        for e, c in self.terms.items():
            re = list(e)
            re[i] = 0
            d = out.setdefault(e[i], {})
            d[tuple(re)] = d.get(tuple(re), 0) + c
        return {k: Poly(self.vars, v) for k, v in out.items()}

    def evaluate(self, values: dict) -> complex:
        """Numeric value with {varname: complex}; every variable must be given."""
        idx = [values[v] for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            m = c
            for base, p in zip(idx, e):
                if p:
                    m *= base ** p
            total += m
        return total

    # -- printing

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, p in zip(self.vars, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            if not factors:
                body = str(abs(c))
            else:
                body = "*".join(factors)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            s += sign + body
        return s

    __repr__ = __str__


def _univar_from(polys_by_power: dict, i: int, vars) -> Poly:
    t: dict = {}
    for p, coef in polys_by_power.items():
        for e, c in coef.terms.items():
            ne = list(e)
            ne[i] = p
            t[tuple(ne)] = t.get(tuple(ne), 0) + c
    return Poly(vars, t)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Multivariate gcd over Z via primitive pseudo-remainder sequences.

    Normalized so the lex-leading coefficient of the result is positive.
    """
    if f.is_zero():
        return _pos_lead(g)
    if g.is_zero():
        return _pos_lead(f)
    if f.is_const() or g.is_const():
        cg = int_gcd(f.content(), g.content())
        return Poly.const(f.vars, cg)
    if len(f.terms) == 1 or len(g.terms) == 1:
        return _monomial_gcd(f, g)
    active = set()
    for e in f.terms:
        active.update(i for i, x in enumerate(e) if x)
    for e in g.terms:
        active.update(i for i, x in enumerate(e) if x)
    if len(active) == 1:
        return _univar_gcd(f, g, next(iter(active)))
    # main variable: first with positive degree in either
    main = min(active)
    fu, gu = f._to_univar(main), g._to_univar(main)
    cont_f = _list_gcd(list(fu.values()))
    cont_g = _list_gcd(list(gu.values()))
    cont = poly_gcd(cont_f, cont_g)
    fp = _primitive_univar(fu, cont_f)
    gp = _primitive_univar(gu, cont_g)
    if (len(f.terms) + len(g.terms) > 16) and _multivar_coprime(fp, gp):
        return _pos_lead(cont)
    if max(fp) < max(gp):
        fp, gp = gp, fp
    while True:
        r = _pseudo_rem(fp, gp, f.vars)
        if not r:
            break
        rc = _list_gcd(list(r.values()))
        r = _primitive_univar(r, rc)
        fp, gp = gp, r
    result = cont * _univar_from(gp, main, f.vars)
    return _pos_lead(result)


def _monomial_gcd(f: Poly, g: Poly) -> Poly:
    """gcd when at least one operand is a single term."""
    n = len(f.vars)
    mins = [None] * n
    for p in (f, g):
        for e in p.terms:
            for i in range(n):
                if mins[i] is None or e[i] < mins[i]:
                    mins[i] = e[i]
    cg = int_gcd(f.content(), g.content())
    return Poly(f.vars, {tuple(mins): cg})


_GCD_PRIME = (1 << 61) - 1


def _mod_euclid_const(a: list, b: list) -> bool:
    """True if gcd of the int coefficient lists is constant mod _GCD_PRIME."""
    p = _GCD_PRIME
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return False
    while b:
        if len(b) == 1:
            return True
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for j in range(len(b)):
                a[off + j] = (a[off + j] - f * b[j]) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                return False
        a, b = b, a
    return len(a) == 1


def _eval_mod(p: Poly, point: list) -> int:
    total = 0
    m = _GCD_PRIME
    for e, cf in p.terms.items():
        t = cf % m
        for v, x in zip(point, e):
            if x:
                t = t * pow(v, x, m) % m
        total = (total + t) % m
    return total


def _multivar_coprime(fu: dict, gu: dict) -> bool:
    """Certify gcd(fu, gu) == 1 for primitive univariate-over-Poly views.

    Evaluates the coefficient polynomials at random points mod a large prime;
    a constant Euclid image with nonvanishing leading coefficient is a proof.
    Returns False when no certificate is found (caller falls back to PRS).
    """
    import random as _random

    rng = _random.Random(0x5EED)
    anyvars = next(iter(fu.values())).vars
    lf, lg = fu[max(fu)], gu[max(gu)]
    for _ in range(4):
        point = [rng.randrange(1, _GCD_PRIME) for _ in anyvars]
        if _eval_mod(lf, point) == 0 and _eval_mod(lg, point) == 0:
            continue
        a = [0] * (max(fu) + 1)
        for k, coef in fu.items():
            a[k] = _eval_mod(coef, point)
        b = [0] * (max(gu) + 1)
        for k, coef in gu.items():
            b[k] = _eval_mod(coef, point)
        if _mod_euclid_const(a, b):
            return True
        return False
    return False


def _univar_gcd(f: Poly, g: Poly, i: int) -> Poly:
    """Primitive PRS gcd for polynomials in the single variable vars[i]."""
    a = _coeff_list(f, i)
    b = _coeff_list(g, i)
    ca, a = _strip_content(a)
    cb, b = _strip_content(b)
    cg = int_gcd(ca, cb)
    # a constant gcd of the mod-p images certifies coprime primitive parts,
    # provided p divides neither leading coefficient; only worth it for
    # inputs big enough that the PRS would be the bottleneck
    if (len(a) + len(b) > 24
            and (abs(a[-1]) < _GCD_PRIME or abs(b[-1]) < _GCD_PRIME)
            and _mod_euclid_const(a, b)):
        return Poly.const(f.vars, cg)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        _, r = _strip_content(r)
        a, b = b, r
    if a[-1] < 0:
        a = [-x for x in a]
    t = {}
    for p, cf in enumerate(a):
        if cf:
            e = [0] * len(f.vars)
            e[i] = p
            t[tuple(e)] = cf * cg
    return Poly(f.vars, t)


def _coeff_list(p: Poly, i: int) -> list:
    out = [0] * (p.degree_in(i) + 1)
    for e, cf in p.terms.items():
        out[e[i]] += cf
    return out


def _strip_content(a: list):
    while a and a[-1] == 0:
        a.pop()
    g = 0
    for x in a:
        g = int_gcd(g, abs(x))
        if g == 1:
            return 1, a
    if g > 1:
        a = [x // g for x in a]
    return (g or 1), a


def _int_prem(a: list, b: list) -> list:
    """Pseudo-remainder of int coefficient lists (ascending powers)."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        r = [x * lb for x in r]
        off = dr - db
        for j, bj in enumerate(b):
            r[off + j] -= lr * bj
        while r and r[-1] == 0:
            r.pop()
    return r


def _pos_lead(p: Poly) -> Poly:
    if p.is_zero():
        return p
    _, c = p.lead()
    return -p if c < 0 else p


def _list_gcd(polys) -> Poly:
    g = polys[0]
    for p in polys[1:]:
        if g.is_const() and abs(g.const_value()) == 1:
            break
        g = poly_gcd(g, p)
    return _pos_lead(g)


def _primitive_univar(u: dict, cont: Poly) -> dict:
    if cont.is_const() and cont.const_value() == 1:
        return u
    return {p: coef.divide_exact(cont) for p, coef in u.items()}


def _pseudo_rem(f: dict, g: dict, vars) -> dict:
    """Pseudo-remainder of univariate-over-Poly dicts {power: Poly}."""
    df, dg = max(f), max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        r = {p: coef * lg for p, coef in r.items()}
        for p, coef in g.items():
            e = p + dr - dg
            s = r.get(e, Poly(vars, {})) - coef * lr
            if s.is_zero():
                r.pop(e, None)
            else:
                r[e] = s
        r = {p: c for p, c in r.items() if not c.is_zero()}
    return r


# ---------------------------------------------------------------------------
# Reduced fractions of polynomials
# ---------------------------------------------------------------------------

class Frac:
    """num/den with gcd(num, den) = 1 and positive-leading denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ParameterCollisionError(
                "zero denominator: degenerate parameter collision")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, vars, n) -> "Frac":
        if isinstance(n, Fraction):
            return cls(Poly.const(vars, n.numerator), Poly.const(vars, n.denominator), reduce=False)
        return cls(Poly.const(vars, int(n)), Poly.const(vars, 1), reduce=False)

    @classmethod
    def var(cls, vars, name, power: int = 1) -> "Frac":
        if power >= 0:
            return cls(Poly.var(vars, name, power), Poly.const(vars, 1), reduce=False)
        return cls(Poly.const(vars, 1), Poly.var(vars, name, -power), reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return Frac(-self.num, self.den, reduce=False)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def _addsub(self, other, sign: int):
        # Henrici: with reduced inputs the result below is already reduced
        d1, d2 = self.den, other.den
        if d1 is d2 or d1 == d2:
            num = self.num + sign * other.num
            if num.is_zero():
                return Frac(num, Poly.const(num.vars, 1), reduce=False)
            g2 = poly_gcd(num, d1)
            if g2.is_one():
                return Frac(num, d1, reduce=False)
            return _normalized(num.divide_exact(g2), d1.divide_exact(g2))
        g = poly_gcd(d1, d2)
        if g.is_one():
            num = self.num * d2 + sign * (other.num * d1)
            return _normalized(num, d1 * d2)
        d1g = d1.divide_exact(g)
        d2g = d2.divide_exact(g)
        t = self.num * d2g + sign * (other.num * d1g)
        if t.is_zero():
            return Frac(t, Poly.const(t.vars, 1), reduce=False)
        g2 = poly_gcd(t, g)
        if g2.is_one():
            return _normalized(t, d1 * d2g)
        return _normalized(t.divide_exact(g2), d1g * d2.divide_exact(g2))

    def __mul__(self, other):
        if self.den.is_one() and other.den.is_one():
            return Frac(self.num * other.num, self.den, reduce=False)
        # cross-reduce; with reduced inputs no final gcd is needed
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.divide_exact(g1)
        d2 = other.den if g1.is_one() else other.den.divide_exact(g1)
        n2 = other.num if g2.is_one() else other.num.divide_exact(g2)
        d1 = self.den if g2.is_one() else self.den.divide_exact(g2)
        return _normalized(n1 * n2, d1 * d2)

    def __truediv__(self, other):
        if other.is_zero():
            raise ParameterCollisionError(
                "division by zero: degenerate parameter collision")
        return self * Frac(other.den, other.num, reduce=False)

    def inv(self) -> "Frac":
        if self.is_zero():
            raise ParameterCollisionError(
                "inverting zero: degenerate parameter collision")
        return _normalized(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return Frac(self.num ** n, self.den ** n, reduce=False)

    def evaluate(self, values: dict) -> complex:
        dv = self.den.evaluate(values)
        if dv == 0:
            raise PoleError(f"denominator ({self.den}) vanishes at {values}")
        return self.num.evaluate(values) / dv

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return num, Poly.const(den.vars, 1)
    if den.is_one():
        return num, den
    g = poly_gcd(num, den)
    if not (g.is_const() and g.const_value() == 1):
        num = num.divide_exact(g)
        den = den.divide_exact(g)
    _, lc = den.lead()
    if lc < 0:
        num, den = -num, -den
    return num, den


def _normalized(num: Poly, den: Poly) -> Frac:
    """Wrap an already-coprime pair, fixing only the denominator sign."""
    if num.is_zero():
        return Frac(num, Poly.const(den.vars, 1), reduce=False)
    _, lc = den.lead()
    if lc < 0:
        num, den = -num, -den
    return Frac(num, den, reduce=False)


# ---------------------------------------------------------------------------
# QCoeff: the user-facing coefficient type
# ---------------------------------------------------------------------------

QCD_VARS = ("q", "c", "d")

_ONE_POLY = Poly.const(QCD_VARS, 1)


class QCoeff:
    """Element of Q(q, c, d), or a bare complex number (kind 'numeric').

    Exact values support field arithmetic with decidable equality; numeric
    values are double-precision complex.  Mixing is allowed only when the
    exact operand is a rational constant.
    """

    __slots__ = ("frac", "value")

    def __init__(self, frac: Frac | None = None, value: complex | None = None):
        self.frac = frac
        self.value = value

    # -- constructors

    @classmethod
    def exact(cls, frac: Frac) -> "QCoeff":
        return cls(frac=frac)

    @classmethod
    def integer(cls, n: int) -> "QCoeff":
        return cls(frac=Frac.const(QCD_VARS, n))

    @classmethod
    def rational(cls, a, b=1) -> "QCoeff":
        return cls(frac=Frac.const(QCD_VARS, Fraction(a, b)))

    @classmethod
    def numeric(cls, z) -> "QCoeff":
        return cls(value=complex(z))

    @property
    def is_exact(self) -> bool:
        return self.frac is not None

    def is_zero(self) -> bool:
        return self.frac.is_zero() if self.is_exact else self.value == 0

    def is_one(self) -> bool:
        if self.is_exact:
            return self.frac.num == _ONE_POLY and self.frac.den == _ONE_POLY
        return self.value == 1

    # -- coercion

    def _pair(self, other):
        if isinstance(other, QCoeff):
            a, b = self, other
        elif isinstance(other, int):
            a, b = self, QCoeff.integer(other)
        elif isinstance(other, Fraction):
            a, b = self, QCoeff(frac=Frac.const(QCD_VARS, other))
        elif isinstance(other, (float, complex)):
            a, b = self, QCoeff.numeric(other)
        else:
            return None
        if a.is_exact == b.is_exact:
            return a, b
        # exact/numeric mix: demote a *constant* exact side
        ex = a if a.is_exact else b
        if ex.frac.num.is_const() and ex.frac.den.is_const():
            z = Fraction(ex.frac.num.const_value(), ex.frac.den.const_value())
            demoted = QCoeff.numeric(complex(z))
            return (demoted, b) if ex is a else (a, demoted)
        raise CoeffError("cannot mix a symbolic exact coefficient with a numeric one")

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if a.is_exact:
            return QCoeff(frac=a.frac + b.frac)
        return QCoeff(value=a.value + b.value)

    __radd__ = __add__

    def __neg__(self):
        if self.is_exact:
            return QCoeff(frac=-self.frac)
        return QCoeff(value=-self.value)

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if a.is_exact:
            return QCoeff(frac=a.frac - b.frac)
        return QCoeff(value=a.value - b.value)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if a.is_exact:
            return QCoeff(frac=a.frac * b.frac)
        return QCoeff(value=a.value * b.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        if a.is_exact:
            return QCoeff(frac=a.frac / b.frac)
        if b.value == 0:
            raise ParameterCollisionError(
                "division by zero: degenerate parameter collision")
        return QCoeff(value=a.value / b.value)

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return b / a

    def __pow__(self, n: int):
        if self.is_exact:
            return QCoeff(frac=self.frac ** n)
        return QCoeff(value=self.value ** n)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            try:
                return (self - other).is_zero()
            except CoeffError:
                return False
        if not isinstance(other, QCoeff):
            return NotImplemented
        if self.is_exact != other.is_exact:
            try:
                return (self - other).is_zero()
            except CoeffError:
                return False
        return (self - other).is_zero()

    def __hash__(self):
        if self.is_exact:
            return hash(self.frac)
        return hash(self.value)

    # -- involution support

    def conj(self) -> "QCoeff":
        """Complex conjugate; exact fractions have real (rational) coefficients."""
        if self.is_exact:
            return self
        return QCoeff(value=self.value.conjugate())

    def swap_cd(self) -> "QCoeff":
        """The substitution c <-> d (used by the one-sheet-hyperboloid involution)."""
        if not self.is_exact:
            return self
        return QCoeff(frac=Frac(_swap_poly(self.frac.num), _swap_poly(self.frac.den)))

    # -- evaluation

    def evaluate(self, q0: float, c0: complex = 1.0, d0: complex = 1.0) -> complex:
        if not self.is_exact:
            return self.value
        if not (isinstance(q0, (int, float)) and 0 < q0 < 1):
            raise ValueError("q must be real with 0 < q < 1")
        return self.frac.evaluate({"q": complex(q0), "c": complex(c0), "d": complex(d0)})

    # -- printing / parsing

    def __str__(self):
        if self.is_exact:
            return str(self.frac)
        return repr(self.value)

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "QCoeff":
        return _Parser(text).parse()


def _swap_poly(p: Poly) -> Poly:
    t = {}
    for (eq, ec, ed), cf in p.terms.items():
        t[(eq, ed, ec)] = cf
    return Poly(p.vars, t)


def arith(a: QCoeff, b: QCoeff, op: str) -> QCoeff:
    """Dispatch form of the four field operations (CLI-facing)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# module-level generators
one = QCoeff.integer(1)
zero = QCoeff.integer(0)
q = QCoeff(frac=Frac.var(QCD_VARS, "q"))
c = QCoeff(frac=Frac.var(QCD_VARS, "c"))
d = QCoeff(frac=Frac.var(QCD_VARS, "d"))


def qpow(n: int) -> QCoeff:
    return QCoeff(frac=Frac.var(QCD_VARS, "q", n))


# ---------------------------------------------------------------------------
# Parser for the reduced-fraction serialization
# ---------------------------------------------------------------------------

class _Parser:
    """Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := ['-'] atom ['^' int]; atom := int | var | '(' expr ')'."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> QCoeff:
        v = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return v

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> QCoeff:
        v = self.term()
        while self.peek() and self.peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> QCoeff:
        v = self.unary()
        while self.peek() and self.peek() in "*/":
            op = self.text[self.pos]
            self.pos += 1
            u = self.unary()
            v = v * u if op == "*" else v / u
        return v

    def unary(self) -> QCoeff:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.atom_pow()

    def atom_pow(self) -> QCoeff:
        v = self.atom()
        while self.peek() == "^" or self.text[self.pos:self.pos + 2] == "**":
            self.pos += 2 if self.text[self.pos:self.pos + 2] == "**" else 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            n = self.integer()
            v = v ** (sign * n)
        return v

    def atom(self) -> QCoeff:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                raise ValueError("expected ')'")
            self.pos += 1
            return v
        if ch.isdigit():
            return QCoeff.integer(self.integer())
        if ch in ("q", "c", "d"):
            self.pos += 1
            return {"q": q, "c": c, "d": d}[ch]
        raise ValueError(f"unexpected character {ch!r} at {self.pos}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at {start}")
        return int(self.text[start:self.pos])
