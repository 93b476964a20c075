"""The quantum Heisenberg algebra for sl(n+1) on its defining representation:
generators z_0..z_n, zhat_0..zhat_n and the q-central element C, rewritten to
the normal order  z (ascending) · C-powers · zhat (ascending).

Also the induced module W (zhat kill the vacuum, C fixes it), which is the
faithful module used everywhere for operator-level relation checking, plus the
commuting elements x_i, the distinguished invariant 2-tensor, and the
*-structures.
"""

from __future__ import annotations

from .coeffs import QCoeff, qpow, one, zero
from . import uq

# letters: ("z", i), ("zh", i), ("C",)


def _cmp_order(l1, l2) -> bool:
    """True if the adjacent pair l1 l2 is in normal order."""
    k1, k2 = l1[0], l2[0]
    if k1 == "z":
        return k2 != "z" or l1[1] <= l2[1]
    if k1 == "C":
        return k2 != "z"
    # k1 == "zh": ordered only before a later-or-equal zh
    return k2 == "zh" and l1[1] <= l2[1]


class HeisAlgebra:
    """Rewriting engine and element factory for a fixed rank n."""

    def __init__(self, n: int):
        self.n = n

    # -- element builders

    def z(self, i: int) -> "HeisElement":
        return self.from_word((("z", i),))

    def zh(self, i: int) -> "HeisElement":
        return self.from_word((("zh", i),))

    def C(self) -> "HeisElement":
        return self.from_word((("C",),))

    def c_lower(self) -> "HeisElement":
        """c = C/(q^{-1} - q), the homogeneous parameter."""
        return self.C().scale(one / (qpow(-1) - qpow(1)))

    def unit(self, coeff=one) -> "HeisElement":
        return HeisElement(self, {self._key(()): coeff})

    def from_word(self, word) -> "HeisElement":
        return HeisElement(self, self.nf_word(word))

    # -- normal form

    def _key(self, word) -> tuple:
        """Monomial key (z-exponents, C-power, zh-exponents) of an ordered word."""
        za = [0] * (self.n + 1)
        zha = [0] * (self.n + 1)
        cp = 0
        for l in word:
            if l[0] == "z":
                za[l[1]] += 1
            elif l[0] == "zh":
                zha[l[1]] += 1
            else:
                cp += 1
        return tuple(za), cp, tuple(zha)

    def key_word(self, key) -> tuple:
        za, cp, zha = key
        word = []
        for i, a in enumerate(za):
            word += [("z", i)] * a
        word += [("C",)] * cp
        for i, a in enumerate(zha):
            word += [("zh", i)] * a
        return tuple(word)

    def nf_word(self, word) -> dict:
        """Normal form of a letter word: map monomial key -> QCoeff."""
        out: dict = {}
        stack = [(tuple(word), one)]
        while stack:
            w, cf = stack.pop()
            pos = -1
            for j in range(len(w) - 1):
                if not _cmp_order(w[j], w[j + 1]):
                    pos = j
                    break
            if pos < 0:
                key = self._key(w)
                s = out.get(key, None)
                s = cf if s is None else s + cf
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
                continue
            l1, l2 = w[pos], w[pos + 1]
            head, tail = w[:pos], w[pos + 2:]
            for repl, factor in self._rewrite(l1, l2):
                stack.append((head + repl + tail, cf * factor))
        return out

    def _rewrite(self, l1, l2):
        """Rewrite steps for an out-of-order adjacent pair."""
        k1, k2 = l1[0], l2[0]
        swap = (l2, l1)
        if k1 == "z" and k2 == "z":
            return [(swap, qpow(-1))]
        if k1 == "zh" and k2 == "zh":
            return [(swap, qpow(1))]
        if k1 == "C":
            return [(swap, qpow(-2))]
        if k1 == "zh" and k2 == "C":
            return [(swap, qpow(-2))]
        # zh_i z_j
        i, j = l1[1], l2[1]
        if i != j:
            return [(swap, qpow(-1))]
        terms = [((("z", i), ("zh", i)), one), ((("C",),), -one)]
        coeff = -(qpow(-2) - one)
        for k in range(i + 1, self.n + 1):
            terms.append(((("z", k), ("zh", k)), coeff))
        return terms

    # -- distinguished commuting elements

    def x(self, i: int) -> "HeisElement":
        """x_i = sum_{k >= i} z_k zhat_k + q c, for 0 <= i <= n+1."""
        if not 0 <= i <= self.n + 1:
            raise ValueError(f"x index {i} out of range")
        acc = self.c_lower().scale(qpow(1))
        for k in range(i, self.n + 1):
            acc = acc + self.z(k) * self.zh(k)
        return acc


class HeisElement:
    """Normal-form element: map (z-exps, C-power, zh-exps) -> QCoeff."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeisAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {}
        if terms:
            for k, cf in terms.items():
                if not cf.is_zero():
                    self.terms[k] = cf

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HeisElement):
            return NotImplemented
        return (self - other).is_zero()

    def __add__(self, other):
        t = dict(self.terms)
        for k, cf in other.terms.items():
            s = t.get(k, None)
            s = cf if s is None else s + cf
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return HeisElement(self.algebra, t)

    def __neg__(self):
        return HeisElement(self.algebra, {k: -cf for k, cf in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "HeisElement":
        if not isinstance(coeff, QCoeff):
            coeff = QCoeff.integer(coeff)
        if coeff.is_zero():
            return HeisElement(self.algebra)
        return HeisElement(self.algebra, {k: cf * coeff for k, cf in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QCoeff)):
            return self.scale(other)
        alg = self.algebra
        out: dict = {}
        for k1, c1 in self.terms.items():
            w1 = alg.key_word(k1)
            for k2, c2 in other.terms.items():
                prod = c1 * c2
                for key, cf in alg.nf_word(w1 + alg.key_word(k2)).items():
                    term = prod * cf
                    s = out.get(key, None)
                    s = term if s is None else s + term
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return HeisElement(alg, out)

    __rmul__ = scale

    def commutator(self, other) -> "HeisElement":
        return self * other - other * self

    def degree_terms(self, d: int) -> dict:
        """Terms of total letter degree d (z + C + zh count)."""
        return {k: cf for k, cf in self.terms.items()
                if sum(k[0]) + k[1] + sum(k[2]) == d}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            za, cp, zha = k
            factors = []
            for i, a in enumerate(za):
                if a:
                    factors.append(f"z{i}" + (f"^{a}" if a > 1 else ""))
            if cp:
                factors.append("C" + (f"^{cp}" if cp > 1 else ""))
            for i, a in enumerate(zha):
                if a:
                    factors.append(f"zh{i}" + (f"^{a}" if a > 1 else ""))
            body = "*".join(factors) if factors else "1"
            parts.append(f"{self.terms[k]}*{body}")
        return " + ".join(parts)

    # -- *-structures

    def star(self, which: str = "sharp", iota: tuple | None = None) -> "HeisElement":
        """Antilinear anti-automorphism: 'sharp' (z <-> zhat) or 'star' with signs."""
        if which == "star" and iota is None:
            raise ValueError("star involution requires iota")
        alg = self.algebra
        out = HeisElement(alg)
        for (za, cp, zha), cf in self.terms.items():
            word = []
            sign = 1
            for i in range(alg.n, -1, -1):
                for _ in range(zha[i]):
                    word.append(("z", i))
                    if which == "star":
                        sign *= iota[i]
            word += [("C",)] * cp
            for i in range(alg.n, -1, -1):
                for _ in range(za[i]):
                    word.append(("zh", i))
                    if which == "star":
                        sign *= iota[i]
            coeff = cf.conj() if sign == 1 else -cf.conj()
            out = out + HeisElement(alg, alg.nf_word(word)).scale(coeff)
        return out


# ---------------------------------------------------------------------------
# U_q action on the Heisenberg algebra (twisted derivations)
# ---------------------------------------------------------------------------

def _letter_image(gen, letter):
    """Action of a generator on a single letter: list of (letter or None, QCoeff).

    None means the letter is killed (coefficient irrelevant).
    """
    kind = gen[0]
    if letter[0] == "C":
        if kind == "K":
            return [(letter, one)]
        return []
    lk, j = letter
    if kind == "K":
        i, p = gen[1], gen[2]
        if lk == "z":
            if j == i - 1:
                return [(letter, qpow(-p))]
            if j == i:
                return [(letter, qpow(p))]
            return [(letter, one)]
        if j == i - 1:
            return [(letter, qpow(p))]
        if j == i:
            return [(letter, qpow(-p))]
        return [(letter, one)]
    if kind == "E":
        i = gen[1]
        if lk == "z":
            return [(("z", j - 1), one)] if j == i else []
        return [(("zh", j + 1), -qpow(-1))] if j == i - 1 else []
    # F_i
    i = gen[1]
    if lk == "z":
        return [(("z", j + 1), one)] if j == i - 1 else []
    return [(("zh", j - 1), -qpow(1))] if j == i else []


def act_generator(gen, f: HeisElement) -> HeisElement:
    """Module-algebra action of a single generator letter on a normal form.

    E twists the prefix by K^{-1}, F twists the suffix by K, K acts diagonally.
    """
    alg = f.algebra
    kind = gen[0]
    out: dict = {}
    for key, cf in f.terms.items():
        word = alg.key_word(key)
        if kind == "K":
            factor = cf
            for letter in word:
                [(_, s)] = _letter_image(gen, letter)
                factor = factor * s
            s = out.get(key, None)
            s = factor if s is None else s + factor
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
            continue
        twist = ("K", gen[1], -1) if kind == "E" else ("K", gen[1], 1)
        for pos, letter in enumerate(word):
            images = _letter_image(gen, letter)
            if not images:
                continue
            (new_letter, s0) = images[0]
            coeff = cf * s0
            if kind == "E":
                for l in word[:pos]:
                    [(_, s)] = _letter_image(twist, l)
                    coeff = coeff * s
            else:
                for l in word[pos + 1:]:
                    [(_, s)] = _letter_image(twist, l)
                    coeff = coeff * s
            new_word = word[:pos] + (new_letter,) + word[pos + 1:]
            for k2, c2 in alg.nf_word(new_word).items():
                term = coeff * c2
                s = out.get(k2, None)
                s = term if s is None else s + term
                if s.is_zero():
                    out.pop(k2, None)
                else:
                    out[k2] = s
    return HeisElement(alg, out)


def act_element(a: "uq.AlgebraElement", f: HeisElement) -> HeisElement:
    """Action of a general algebra element: words act by composition."""
    out = HeisElement(f.algebra)
    for w, cf in a.terms.items():
        g = f
        for letter in reversed(w):
            if letter[0] == "K":
                for _ in range(abs(letter[2])):
                    g = act_generator(("K", letter[1], 1 if letter[2] > 0 else -1), g)
            else:
                g = act_generator(letter, g)
        out = out + g.scale(cf)
    return out


# ---------------------------------------------------------------------------
# The induced module W
# ---------------------------------------------------------------------------

class WModule:
    """Basis z^m · vacuum for |m| <= N; all operators are degree-graded or
    degree-shifting, truncation drops overflow monomials (projection)."""

    def __init__(self, n: int, N: int):
        if N < 1:
            raise ValueError("N >= 1 required")
        self.n = n
        self.N = N
        self.algebra = HeisAlgebra(n)
        self.basis: list[tuple] = []
        for total in range(N + 1):
            self.basis.extend(_compositions(total, n + 1))
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._op_cache: dict = {}

    def dim(self) -> int:
        return len(self.basis)

    def vacuum(self) -> dict:
        return {self.index[(0,) * (self.n + 1)]: one}

    # -- single operator columns

    def op_columns(self, op) -> list:
        """Sparse columns [(row, coeff), ...] per basis index for a letter
        ('z', i), ('zh', i), ('C',) or a U_q generator ('E', i), ('F', i),
        ('K', i, p)."""
        if op in self._op_cache:
            return self._op_cache[op]
        cols = []
        alg = self.algebra
        for m in self.basis:
            if op[0] == "z":
                i = op[1]
                t = sum(m)
                if t + 1 > self.N:
                    cols.append([])
                    continue
                m2 = list(m)
                m2[i] += 1
                cf = qpow(-sum(m[j] for j in range(i)))
                cols.append([(self.index[tuple(m2)], cf)])
            elif op[0] == "zh":
                word = (("zh", op[1]),) + _monomial_word(m)
                cols.append(self._project(alg.nf_word(word)))
            elif op[0] == "C":
                cols.append([(self.index[m], qpow(-2 * sum(m)))])
            else:
                vec = self._uq_on_monomial(op, m)
                cols.append(vec)
        self._op_cache[op] = cols
        return cols

    def _project(self, nf: dict) -> list:
        """chi-projection: kill zh-terms, set C -> 1, drop overflow degree."""
        out = []
        for (za, cp, zha), cf in nf.items():
            if any(zha):
                continue
            if sum(za) > self.N:
                continue
            out.append((self.index[za], cf))
        return out

    def _uq_on_monomial(self, gen, m) -> list:
        f = HeisElement(self.algebra, {(m, 0, (0,) * (self.n + 1)): one})
        g = act_generator(gen, f)
        out = []
        for (za, cp, zha), cf in g.terms.items():
            out.append((self.index[za], cf))
        return out

    # -- vector arithmetic

    def apply(self, op, vec: dict) -> dict:
        cols = self.op_columns(op)
        out: dict = {}
        for idx, cf in vec.items():
            for row, a in cols[idx]:
                term = cf * a
                s = out.get(row, None)
                s = term if s is None else s + term
                if s.is_zero():
                    out.pop(row, None)
                else:
                    out[row] = s
        return out

    def apply_algebra(self, a: "uq.AlgebraElement", vec: dict) -> dict:
        total: dict = {}
        for w, cf in a.terms.items():
            v = vec
            for letter in reversed(w):
                if letter[0] == "K":
                    p = letter[2]
                    step = ("K", letter[1], 1 if p > 0 else -1)
                    for _ in range(abs(p)):
                        v = self.apply(step, v)
                else:
                    v = self.apply(letter, v)
            for row, x in v.items():
                term = x * cf
                s = total.get(row, None)
                s = term if s is None else s + term
                if s.is_zero():
                    total.pop(row, None)
                else:
                    total[row] = s
        return total

    def annihilated_by(self, a: "uq.AlgebraElement") -> bool:
        """True if a acts as zero on every basis vector (exact)."""
        for i in range(self.dim()):
            if self.apply_algebra(a, {i: one}):
                return False
        return True

    def equal(self, a: "uq.AlgebraElement", b: "uq.AlgebraElement") -> bool:
        """Element equality decided on the truncated faithful module."""
        return self.annihilated_by(a - b)

    def matrix(self, a: "uq.AlgebraElement"):
        """Dense complex matrix of an element after numeric evaluation is NOT
        done here; returns exact columns keyed by basis index."""
        return [self.apply_algebra(a, {i: one}) for i in range(self.dim())]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _monomial_word(m) -> tuple:
    word = []
    for i, a in enumerate(m):
        word += [("z", i)] * a
    return tuple(word)


# ---------------------------------------------------------------------------
# The invariant 2-tensor of degree (1,1)
# ---------------------------------------------------------------------------

class HeisTensor:
    """Element of H ⊗ H as a map (key, key) -> QCoeff with the coproduct action."""

    def __init__(self, algebra: HeisAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {}
        if terms:
            for k, cf in terms.items():
                if not cf.is_zero():
                    self.terms[k] = cf

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        t = dict(self.terms)
        for k, cf in other.terms.items():
            s = t.get(k, None)
            s = cf if s is None else s + cf
            if s.is_zero():
                t.pop(k, None)
            else:
                t[k] = s
        return HeisTensor(self.algebra, t)

    def __sub__(self, other):
        return self + HeisTensor(self.algebra, {k: -cf for k, cf in other.terms.items()})

    def scale(self, coeff: QCoeff) -> "HeisTensor":
        return HeisTensor(self.algebra, {k: cf * coeff for k, cf in self.terms.items()})

    def act(self, gen) -> "HeisTensor":
        """Coproduct action of a generator letter on the 2-tensor."""
        alg = self.algebra
        out = HeisTensor(alg)
        for (ka, kb), cf in self.terms.items():
            fa = HeisElement(alg, {ka: cf})
            fb = HeisElement(alg, {kb: one})
            if gen[0] == "K":
                parts = [(act_generator(gen, fa), act_generator(gen, fb))]
            elif gen[0] == "E":
                kinv = ("K", gen[1], -1)
                parts = [(act_generator(gen, fa), fb),
                         (act_generator(kinv, fa), act_generator(gen, fb))]
            else:
                k1 = ("K", gen[1], 1)
                parts = [(act_generator(gen, fa), act_generator(k1, fb)),
                         (fa, act_generator(gen, fb))]
            for left, right in parts:
                for k1, c1 in left.terms.items():
                    for k2, c2 in right.terms.items():
                        key = (k1, k2)
                        term = c1 * c2
                        s = out.terms.get(key, None)
                        s = term if s is None else s + term
                        if s.is_zero():
                            out.terms.pop(key, None)
                        else:
                            out.terms[key] = s
        return out


def letters_of(n: int) -> list:
    out = [("z", i) for i in range(n + 1)]
    out.append(("C",))
    out += [("zh", i) for i in range(n + 1)]
    return out


def all_words(n: int, length: int):
    import itertools

    return itertools.product(letters_of(n), repeat=length)


def nf_multiplicative(alg: HeisAlgebra, max_len: int = 4):
    """Exhaustive confluence check: nf(uv) == nf(nf(u) nf(v)) for every word
    of length <= max_len and every split.  Returns a counterexample word as
    a string, or None."""
    for length in range(2, max_len + 1):
        for word in all_words(alg.n, length):
            whole = HeisElement(alg, alg.nf_word(word))
            for cut in range(1, length):
                left = HeisElement(alg, alg.nf_word(word[:cut]))
                right = HeisElement(alg, alg.nf_word(word[cut:]))
                if not (left * right - whole).is_zero():
                    return repr(word)
    return None


def pbw_counts(alg: HeisAlgebra, dmax: int = 4):
    """Graded dimensions: normal monomials of degree d are fixed by nf and
    their count matches the composition count.  Returns (bad, counts)."""
    from math import comb

    n = alg.n
    counts = []
    for d in range(dmax + 1):
        slots = 2 * (n + 1) + 1
        expected = comb(d + slots - 1, slots - 1)
        seen = 0
        for za in _compositions_upto(d, n + 1):
            rest = d - sum(za)
            for cp in range(rest + 1):
                for zha in _compositions(rest - cp, n + 1):
                    key = (tuple(za), cp, tuple(zha))
                    word = alg.key_word(key)
                    nf = alg.nf_word(word)
                    if list(nf.keys()) != [key] or not (nf[key] - one).is_zero():
                        return repr(key), counts
                    seen += 1
        if seen != expected:
            return f"degree {d}: {seen} != {expected}", counts
        counts.append(seen)
    return None, counts


def _compositions_upto(total: int, parts: int):
    for t in range(total + 1):
        yield from _compositions(t, parts)


def invariant_tensor(n: int) -> HeisTensor:
    """sum_k z_k ⊗ zhat_k − sum_k q^{-2k} zhat_k ⊗ z_k (spans I_0)."""
    alg = HeisAlgebra(n)
    terms = {}
    for k in range(n + 1):
        za = tuple(1 if j == k else 0 for j in range(n + 1))
        zh = tuple(1 if j == k else 0 for j in range(n + 1))
        zkey = (za, 0, (0,) * (n + 1))
        hkey = ((0,) * (n + 1), 0, zh)
        terms[(zkey, hkey)] = one
        terms[(hkey, zkey)] = -qpow(-2 * k)
    return HeisTensor(alg, terms)


def check_I0_invariance(n: int) -> dict:
    """Verify the displayed 2-tensor is U_q-invariant: xi v = eps(xi) v."""
    v = invariant_tensor(n)
    failures = []
    for i in range(1, n + 1):
        for gen, expect_identity in ((("E", i), False), (("F", i), False),
                                     (("K", i, 1), True), (("K", i, -1), True)):
            w = v.act(gen)
            target = v if expect_identity else HeisTensor(v.algebra)
            if not (w - target).is_zero():
                failures.append(str(gen))
    return {"check": "i0", "n": n, "status": "pass" if not failures else "fail",
            "failures": failures}
