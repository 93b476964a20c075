"""Degenerate-series machinery for the rank-2 real forms: positivity of the
norm ratios on the eigenvalue lattice, the component scan with truncation
walls, the trace-form invariant integral, and the three-case classification
for su(2,1).

All lattice values are handled with Fraction arithmetic when the inputs are
rational (exact wall detection); floats fall back to a relative tolerance.

Conventions: signs s_i = iota_{i-1} iota_i enter the norm ratios
    |zeta_i^* v|^2 = s_i (l_{i-1} - l_i)/(l_i - q^{-2} l_{i+1}) |v|^2
    |zeta_i   v|^2 = s_i (q^2 l_{i-1} - l_i)/(l_i - l_{i+1})     |v|^2
with l_0 = q^{-1} d0 and l_{n+1} = q c0 held fixed.  A zero ratio is a
truncation wall (the stepped vector is null), a pole excludes the step, and
a negative ratio witnesses non-unitarizability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

_FLOAT_TOL = 1e-11


def _sign(x) -> int:
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    if abs(x) <= _FLOAT_TOL * (1 + abs(x)):
        return 0
    return 1 if x > 0 else -1


@dataclass(frozen=True)
class LatticeChar:
    """Rank, the deformation parameter, the central pair and the eigenvalue
    character (chi(x_1)..chi(x_n)); signs is the per-index vector s_i."""

    n: int
    q: object                  # Fraction or float in (0, 1)
    c0: object
    d0: object
    chi: tuple                 # length n, positive
    signs: tuple               # length n, entries +-1

    def __post_init__(self):
        if len(self.chi) != self.n or len(self.signs) != self.n:
            raise ValueError("chi and signs must have length n")
        if not 0 < float(self.q) < 1:
            raise ValueError("q must satisfy 0 < q < 1")
        if any(float(v) <= 0 for v in self.chi):
            raise ValueError("chi(x_i) must be positive (compose with the sign automorphism)")

    def lam(self, key: tuple) -> tuple:
        """Full eigenvalue tuple (l_0 .. l_{n+1}) at lattice offset key."""
        q = self.q
        mid = tuple(v * q ** (2 * k) for v, k in zip(self.chi, key))
        return (self.d0 / q,) + mid + (self.c0 * q,)


def step_ratios(char: LatticeChar, key: tuple) -> dict:
    """Norm-squared ratios for each unit step from the lattice point `key`.

    Returns {("up", i): ratio-or-None, ("down", i): ...}; None marks a pole
    (the step leaves the representation space).  "up" applies zeta_i
    (l_i -> q^{-2} l_i), "down" applies zeta_i^*.
    """
    lam = char.lam(key)
    q = char.q
    out = {}
    for i in range(1, char.n + 1):
        s = char.signs[i - 1]
        num = s * (q ** 2 * lam[i - 1] - lam[i])
        den = lam[i] - lam[i + 1]
        out[("up", i)] = None if _sign(den) == 0 else num / den
        num2 = s * (lam[i - 1] - lam[i])
        den2 = lam[i] - q ** -2 * lam[i + 1]
        out[("down", i)] = None if _sign(den2) == 0 else num2 / den2
    return out


def positivity_conditions(char: LatticeChar, key: tuple = None) -> dict:
    """The two displayed ratios per index with a boundary flag on zeros."""
    key = key or (0,) * char.n
    ratios = step_ratios(char, key)
    out = {}
    for i in range(1, char.n + 1):
        for tag, lbl in (("down", "zz*"), ("up", "z*z")):
            r = ratios[(tag, i)]
            if r is None:
                out[(lbl, i)] = "pole"
            else:
                sg = _sign(r)
                out[(lbl, i)] = "positive" if sg > 0 else ("boundary" if sg == 0 else "negative")
    return out


@dataclass
class ScanReport:
    reachable: dict            # key -> norm^2 (relative to the start vector)
    walls: list                # (key, direction, index, kind)  kind in {null, pole}
    negative: list             # keys reached with negative norm
    unitarizable: bool
    hit_bound: bool


def lattice_scan(char: LatticeChar, bound: int = 40, max_points: int = 20000) -> ScanReport:
    """Flood-fill from the character over unit steps, propagating norms.

    A null step prunes the branch; a pole excludes it; a negative ratio is
    recorded (the configuration is then not unitarizable).  Norms computed
    along different paths are checked for sign consistency.
    """
    start = (0,) * char.n
    norms = {start: Fraction(1) if isinstance(char.q, Fraction) else 1.0}
    walls, negative = [], []
    queue = [start]
    hit_bound = False
    while queue and len(norms) < max_points:
        key = queue.pop()
        base = norms[key]
        for (tag, i), ratio in step_ratios(char, key).items():
            delta = -1 if tag == "up" else 1   # zeta_i lowers the exponent of q^2
            target = list(key)
            target[i - 1] += delta
            target = tuple(target)
            if any(abs(t) > bound for t in target):
                hit_bound = True
                continue
            if ratio is None:
                walls.append((key, tag, i, "pole"))
                continue
            sg = _sign(ratio)
            if sg == 0:
                walls.append((key, tag, i, "null"))
                continue
            val = base * ratio
            sv = _sign(val)
            if sv == 0:
                walls.append((key, tag, i, "null"))
                continue
            if target in norms:
                st = _sign(norms[target])
                if st and sv and st != sv:
                    raise AssertionError("path-inconsistent norm signs in scan")
                continue
            norms[target] = val
            if sv < 0:
                negative.append(target)
            queue.append(target)
    return ScanReport(norms, walls, negative, not negative, hit_bound)


# ---------------------------------------------------------------------------
# su(2,1): regions and the three-case classification
# ---------------------------------------------------------------------------

def su21_char(q, c0, d0, lam1, lam2) -> LatticeChar:
    """su(2,1) character with the sign pattern (s_1, s_2) = (-1, -1), the one
    whose wall-anchored components realize the degenerate families."""
    return LatticeChar(2, q, c0, d0, (lam1, lam2), (-1, -1))


def region_of(char: LatticeChar, key: tuple) -> str:
    """Solution regions of the positivity conditions for the (-1,-1) signs:
    'upper' = {l1 >= q^{-1}d0, l2 <= q c0, l2 <= q^2 l1}  (l1 grows, l2 falls),
    'lower' = {l1 <= q d0, l2 >= q^{-1} c0, l2 >= q^2 l1} (the mirror family);
    'both' on the common boundary, 'outside' otherwise."""
    lam = char.lam(key)
    q = char.q
    l0, l1, l2, l3 = lam
    up = (_sign(l1 - l0) >= 0 and _sign(l3 - l2) >= 0
          and _sign(q ** 2 * l1 - l2) >= 0)
    lo = (_sign(q ** 2 * l0 - l1) >= 0 and _sign(l2 - l3 / q ** 2) >= 0
          and _sign(l2 - q ** 2 * l1) >= 0)
    if up and lo:
        return "both"
    if up:
        return "upper"
    if lo:
        return "lower"
    return "outside"


def _in_region_upper(q, c0, d0, l1, l2) -> bool:
    return (_sign(l1 - d0 / q) >= 0 and _sign(l1 - l2 / q ** 2) >= 0
            and _sign(l2 - q * c0) >= 0)


def _in_region_lower(q, c0, d0, l1, l2) -> bool:
    return (_sign(d0 / q - l1) >= 0 and _sign(l2 / q ** 2 - l1) >= 0
            and _sign(q * c0 - l2) >= 0)


def classify_su21(q, c0, d0, lam1, lam2) -> dict:
    """The three-case decision tree of the degenerate su(2,1) family.

    (1) d0 <= q^{-2} c0 with the character (q^{-1} d0, q c0): highest-weight,
        DegenerateHolomorphic.
    (2) d0 >= q^{-2} c0 with the same character: lowest-weight,
        DegenerateAntiHolomorphic (at equality case (1) is reported).
    (3) lam2 = q c0 and lam1 straddles: (lam1, lam2) in the lowest-weight
        region while (q^2 lam1, lam2) is in the highest-weight one:
        DegenerateComplimentary (the tunnel situation).
    Anything else: None.
    """
    if not 0 < float(q) < 1:
        raise ValueError("q must satisfy 0 < q < 1")
    std_start = _sign(lam1 - d0 / q) == 0 and _sign(lam2 - q * c0) == 0
    if std_start and _sign(d0 - c0 / q ** 2) <= 0:
        return {"case": "DegenerateHolomorphic", "weight": "highest"}
    if std_start and _sign(d0 - c0 / q ** 2) > 0:
        return {"case": "DegenerateAntiHolomorphic", "weight": "lowest"}
    if (_sign(lam2 - q * c0) == 0
            and _in_region_upper(q, c0, d0, lam1, lam2)
            and _in_region_lower(q, c0, d0, q ** 2 * lam1, lam2)):
        return {"case": "DegenerateComplimentary", "weight": "tunnel"}
    return {"case": None, "weight": None}


# ---------------------------------------------------------------------------
# Trace-form invariant integral on a truncated component
# ---------------------------------------------------------------------------

def rho_weight(char: LatticeChar, key: tuple):
    """Diagonal weight of the moment image of q^rho at a lattice point:
    sqrt(prod_i l_i / (l_0 l_{n+1}))-type product of the K-images."""
    import math

    lam = char.lam(key)
    w = 1.0
    for i in range(1, char.n + 1):
        w *= float(lam[i]) / math.sqrt(float(lam[i - 1]) * float(lam[i + 1]))
    return w


def trace_integral(char: LatticeChar, f: dict, bound: int = 40,
                   tail_tol: float = 1e-12) -> dict:
    """nu_W(f) = sum over the scanned component of f(key) * rho-weight.

    f maps lattice keys to values (a function of x).  Returns the value and
    a tail bound: the largest weight on the scan frontier.
    """
    report = lattice_scan(char, bound)
    total = 0.0
    for key, val in f.items():
        if key not in report.reachable:
            raise ValueError(f"support {key} outside the component")
        total += complex(val) * rho_weight(char, key)
    frontier = max((rho_weight(char, k) for k in report.reachable), default=0.0)
    # K-invariance is structural: K_i fixes every f(x) and the weight.
    return {"value": total, "points": len(report.reachable),
            "max_weight": frontier, "truncated": report.hit_bound}
