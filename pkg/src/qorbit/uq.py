"""The quantized enveloping algebra of sl(n+1): words in E_i, F_i, K_i^{±1}
with Hopf operations, real forms, the quantum adjoint action, and the rank-1
quadratic Casimir.

No rewriting to a PBW basis is attempted here; equality of elements is decided
by acting on a truncated faithful module (see qorbit.heis.WModule.equal).
Words only normalize adjacent K-letters (merge powers, sort commuting runs).
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import QCoeff, qpow, one


def E(i: int) -> tuple:
    return ("E", i)


def F(i: int) -> tuple:
    return ("F", i)


def K(i: int, power: int = 1) -> tuple:
    return ("K", i, power)


def _push(word: list, letter: tuple) -> None:
    """Append a letter, merging/sorting adjacent commuting K's."""
    if letter[0] != "K":
        word.append(letter)
        return
    if letter[2] == 0:
        return
    pos = len(word)
    while pos > 0 and word[pos - 1][0] == "K" and word[pos - 1][1] > letter[1]:
        pos -= 1
    if pos > 0 and word[pos - 1][0] == "K" and word[pos - 1][1] == letter[1]:
        merged = word[pos - 1][2] + letter[2]
        if merged:
            word[pos - 1] = ("K", letter[1], merged)
        else:
            word.pop(pos - 1)
        return
    word.insert(pos, letter)


def join_words(w1, w2) -> tuple:
    out = list(w1)
    for letter in w2:
        _push(out, letter)
    return tuple(out)


class AlgebraElement:
    """Finite QCoeff-linear combination of words in the generators."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        if terms:
            for w, cf in terms.items():
                if not cf.is_zero():
                    self.terms[w] = cf

    @classmethod
    def generator(cls, n: int, letter: tuple) -> "AlgebraElement":
        return cls(n, {(letter,): one})

    @classmethod
    def unit(cls, n: int, coeff: QCoeff = one) -> "AlgebraElement":
        return cls(n, {(): coeff})

    def is_structurally_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        t = dict(self.terms)
        for w, cf in other.terms.items():
            s = t.get(w, None)
            s = cf if s is None else s + cf
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return AlgebraElement(self.n, t)

    def __neg__(self):
        return AlgebraElement(self.n, {w: -cf for w, cf in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "AlgebraElement":
        if not isinstance(coeff, QCoeff):
            coeff = QCoeff.integer(coeff) if isinstance(coeff, int) else QCoeff.numeric(coeff)
        if coeff.is_zero():
            return AlgebraElement(self.n)
        return AlgebraElement(self.n, {w: cf * coeff for w, cf in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = join_words(w1, w2)
                cf = c1 * c2
                s = t.get(w, None)
                s = cf if s is None else s + cf
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        return AlgebraElement(self.n, t)

    __rmul__ = scale

    def __repr__(self):
        if not self.terms:
            return "0"
        def wname(w):
            if not w:
                return "1"
            parts = []
            for l in w:
                if l[0] == "K" and l[2] != 1:
                    parts.append(f"K{l[1]}^{l[2]}")
                else:
                    parts.append(f"{l[0]}{l[1]}")
            return "*".join(parts)
        return " + ".join(f"{cf}*{wname(w)}" for w, cf in sorted(self.terms.items()))

    # ------------------------------------------------------------------
    # Hopf structure
    # ------------------------------------------------------------------

    def coproduct(self) -> "TensorElement":
        out = TensorElement(self.n)
        for w, cf in self.terms.items():
            pairs = {((), ()): cf}
            for letter in w:
                new: dict = {}
                for (a, b), pc in pairs.items():
                    for (la, lb, lcf) in _letter_coproduct(letter):
                        key = (join_words(a, la), join_words(b, lb))
                        term = pc * lcf
                        s = new.get(key, None)
                        s = term if s is None else s + term
                        if s.is_zero():
                            new.pop(key, None)
                        else:
                            new[key] = s
                pairs = new
            out = out + TensorElement(self.n, pairs)
        return out

    def antipode(self) -> "AlgebraElement":
        out = AlgebraElement(self.n)
        for w, cf in self.terms.items():
            term = AlgebraElement.unit(self.n, cf)
            for letter in reversed(w):
                term = term * _letter_antipode(self.n, letter)
            out = out + term
        return out

    def counit(self) -> QCoeff:
        total = QCoeff.integer(0)
        for w, cf in self.terms.items():
            if all(l[0] == "K" for l in w):
                total = total + cf
        return total

    def star(self, form: str = "flat", iota: tuple | None = None) -> "AlgebraElement":
        """Antilinear anti-automorphism: 'flat' (compact) or 'natural' with signs."""
        if form == "natural" and iota is None:
            raise ValueError("natural form requires the sign vector iota")
        if iota is not None and len(iota) != self.n + 1:
            raise ValueError(f"iota must have {self.n + 1} entries")
        out = AlgebraElement(self.n)
        for w, cf in self.terms.items():
            term = AlgebraElement.unit(self.n, cf.conj())
            for letter in reversed(w):
                term = term * _letter_star(self.n, letter, form, iota)
            out = out + term
        return out

    def omega(self, form: str = "flat", iota: tuple | None = None) -> "AlgebraElement":
        """The involutive algebra automorphism entering the module-*-algebra
        law (xi f)^* = omega(xi) f^*:  E_i -> -s_i q^{-1} F_i,
        F_i -> -s_i q E_i, K_i -> K_i^{-1}, with s_i = iota_{i-1} iota_i
        (all s_i = 1 for the compact form)."""
        if form == "natural" and iota is None:
            raise ValueError("natural form requires the sign vector iota")
        out = AlgebraElement(self.n)
        for w, cf in self.terms.items():
            term = AlgebraElement.unit(self.n, cf.conj())
            for letter in w:
                term = term * _letter_omega(self.n, letter, form, iota)
            out = out + term
        return out


class TensorElement:
    """Element of U_q ⊗ U_q as a map (word, word) -> QCoeff."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        if terms:
            for k, cf in terms.items():
                if not cf.is_zero():
                    self.terms[k] = cf

    def __add__(self, other):
        t = dict(self.terms)
        for k, cf in other.terms.items():
            s = t.get(k, None)
            s = cf if s is None else s + cf
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return TensorElement(self.n, t)

    def pairs(self):
        """Iterate (left AlgebraElement word, right word, coefficient)."""
        return self.terms.items()


def _letter_coproduct(letter):
    kind = letter[0]
    if kind == "K":
        return [((letter,), (letter,), one)]
    if kind == "E":
        i = letter[1]
        return [((("E", i),), (), one), ((("K", i, -1),), (("E", i),), one)]
    i = letter[1]
    return [((("F", i),), (("K", i, 1),), one), ((), (("F", i),), one)]


def _letter_antipode(n, letter):
    kind = letter[0]
    if kind == "K":
        return AlgebraElement(n, {(("K", letter[1], -letter[2]),): one})
    i = letter[1]
    if kind == "E":
        return AlgebraElement(n, {(("K", i, 1), ("E", i)): -one})
    return AlgebraElement(n, {(("F", i), ("K", i, -1)): -one})


def _letter_star(n, letter, form, iota):
    kind = letter[0]
    if kind == "K":
        return AlgebraElement(n, {(letter,): one})
    i = letter[1]
    sign = 1
    if form == "natural":
        sign = iota[i - 1] * iota[i]
    if kind == "E":
        base = AlgebraElement(n, {(("K", i, -2), ("F", i)): one})
    else:
        base = AlgebraElement(n, {(("E", i), ("K", i, 2)): one})
    return base.scale(sign)


def _letter_omega(n, letter, form, iota):
    kind = letter[0]
    if kind == "K":
        return AlgebraElement(n, {(("K", letter[1], -letter[2]),): one})
    i = letter[1]
    sign = 1
    if form == "natural":
        sign = iota[i - 1] * iota[i]
    if kind == "E":
        return AlgebraElement(n, {(("F", i),): qpow(-1) * QCoeff.integer(-sign)})
    return AlgebraElement(n, {(("E", i),): qpow(1) * QCoeff.integer(-sign)})


def adjoint_action(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """ad_q(a) b = sum a^(1) b S(a^(2)) via the coproduct of a."""
    out = AlgebraElement(a.n)
    for (w1, w2), cf in a.coproduct().pairs():
        left = AlgebraElement(a.n, {w1: cf})
        right = AlgebraElement(a.n, {w2: one}).antipode()
        out = out + left * b * right
    return out


def automorphism_I(i: int, a: AlgebraElement) -> AlgebraElement:
    """Sign flip E_i -> -E_i, K_i -> -K_i fixing F's (a Hopf automorphism)."""
    t = {}
    for w, cf in a.terms.items():
        sign = 1
        for l in w:
            if l[0] == "E" and l[1] == i:
                sign = -sign
            elif l[0] == "K" and l[1] == i and l[2] % 2:
                sign = -sign
        t[w] = cf if sign == 1 else -cf
    return AlgebraElement(a.n, t)


def casimir_sl2() -> AlgebraElement:
    """(EF + FE)/2 + (q^{-1}+q)/(2(q^{-1}-q)^2) (K - 2 + K^{-1}) for rank 1."""
    n = 1
    half = QCoeff.rational(1, 2)
    ef = AlgebraElement(n, {(("E", 1), ("F", 1)): half, (("F", 1), ("E", 1)): half})
    w = (qpow(-1) + qpow(1)) / ((qpow(-1) - qpow(1)) ** 2 * 2)
    kpart = AlgebraElement(n, {
        (("K", 1, 1),): w,
        (): w * (-2),
        (("K", 1, -1),): w,
    })
    return ef + kpart


def generators(n: int) -> dict:
    """Convenience map of generator AlgebraElements for rank n."""
    g = {}
    for i in range(1, n + 1):
        g[f"E{i}"] = AlgebraElement.generator(n, E(i))
        g[f"F{i}"] = AlgebraElement.generator(n, F(i))
        g[f"K{i}"] = AlgebraElement.generator(n, K(i))
        g[f"K{i}inv"] = AlgebraElement.generator(n, K(i, -1))
    return g


def defining_relations(n: int) -> list[tuple[str, AlgebraElement]]:
    """All defining relation elements (each must act as zero on any module)."""
    g = generators(n)
    rels = []
    qden = qpow(-1) - qpow(1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            Ei, Fj = g[f"E{i}"], g[f"F{j}"]
            r = Ei * Fj - Fj * Ei
            if i == j:
                r = r - (g[f"K{i}"] - g[f"K{i}inv"]).scale(one / qden)
            rels.append((f"[E{i},F{j}]", r))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            a = _cartan(i, j)
            rels.append((f"K{i}E{j}", g[f"K{i}"] * g[f"E{j}"] - (g[f"E{j}"] * g[f"K{i}"]).scale(qpow(-a))))
            rels.append((f"K{i}F{j}", g[f"K{i}"] * g[f"F{j}"] - (g[f"F{j}"] * g[f"K{i}"]).scale(qpow(a))))
            if i < j:
                rels.append((f"[K{i},K{j}]", g[f"K{i}"] * g[f"K{j}"] - g[f"K{j}"] * g[f"K{i}"]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                rels.append((f"[E{i},E{j}]", g[f"E{i}"] * g[f"E{j}"] - g[f"E{j}"] * g[f"E{i}"]))
                rels.append((f"[F{i},F{j}]", g[f"F{i}"] * g[f"F{j}"] - g[f"F{j}"] * g[f"F{i}"]))
    qq = qpow(1) + qpow(-1)
    for i, j in [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if abs(i - j) == 1]:
        Ei, Ej = g[f"E{i}"], g[f"E{j}"]
        rels.append((f"serreE{i}{j}", Ei * Ei * Ej - (Ei * Ej * Ei).scale(qq) + Ej * Ei * Ei))
        Fi, Fj = g[f"F{i}"], g[f"F{j}"]
        rels.append((f"serreF{i}{j}", Fi * Fi * Fj - (Fi * Fj * Fi).scale(qq) + Fj * Fi * Fi))
    return rels


def _cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


# ---------------------------------------------------------------------------
# CLI expression parser: juxtaposed generators, QCoeff scalars in parentheses
# ---------------------------------------------------------------------------

def parse_expression(text: str, n: int) -> AlgebraElement:
    """Parse e.g. 'E1 F1 K1^-1 (q^2) + (1/2) K2' into an AlgebraElement."""
    import re

    token_re = re.compile(r"\s*(?:([EFK])(\d+)(?:\^(-?\d+))?|(\()|([+-]))")
    pos = 0
    result = AlgebraElement(n)
    current = AlgebraElement.unit(n)
    sign = 1
    started = False

    def flush():
        nonlocal result, current, sign, started
        if started:
            result = result + (current if sign > 0 else -current)
        current = AlgebraElement.unit(n)
        sign = 1
        started = False

    while pos < len(text):
        m = token_re.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse at {pos}: {text[pos:]!r}")
        if m.group(1):
            kind, idx = m.group(1), int(m.group(2))
            if not 1 <= idx <= n:
                raise ValueError(f"generator index {idx} out of range for rank {n}")
            power = int(m.group(3)) if m.group(3) else 1
            if kind == "K":
                letter = K(idx, power)
                current = current * AlgebraElement.generator(n, letter)
            else:
                if power < 0:
                    raise ValueError(f"{kind}{idx} is not invertible")
                base = AlgebraElement.generator(n, (kind, idx))
                for _ in range(power):
                    current = current * base
            started = True
        elif m.group(4):
            depth = 1
            j = m.end()
            while j < len(text) and depth:
                if text[j] == "(":
                    depth += 1
                elif text[j] == ")":
                    depth -= 1
                j += 1
            if depth:
                raise ValueError("unbalanced parenthesis")
            scalar = QCoeff.parse(text[m.end():j - 1])
            current = current.scale(scalar)
            started = True
            pos = j
            continue
        else:
            flush()
            sign = 1 if m.group(5) == "+" else -1
            started = False
        pos = m.end()
    flush()
    return result
