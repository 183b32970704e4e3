"""Solution counts mod p: roots of x**n - a, and elliptic ell-torsion.

Conventions: excluded primes (bad reduction, p | n*a, p < 5 for curves)
count as 0.  Finitely many excluded primes never move a prime-average
limit, and the uniform convention keeps the estimators simple.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd

import numpy as np

from .core_arith import kronecker_symbol, pow_mod
from .residue_algebra import QuadOrderSpec


class SplittingType(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def splitting_type(p: int, spec: QuadOrderSpec) -> SplittingType:
    """Classify a rational prime in K by the Kronecker symbol of disc(K)."""
    sym = kronecker_symbol(spec.discriminant, p)
    if sym == 1:
        return SplittingType.SPLIT
    if sym == -1:
        return SplittingType.INERT
    return SplittingType.RAMIFIED


@dataclass(frozen=True)
class PowerEquation:
    """The equation x**n = a."""

    n: int
    a: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("exponent n must be >= 1")


def count_roots_brute(eq: PowerEquation, p: int) -> int:
    """#{x in F_p : x**n = a}, by scanning all residues."""
    target = eq.a % p
    return sum(1 for x in range(p) if pow_mod(x, eq.n, p) == target)


def count_roots_formula(eq: PowerEquation, p: int) -> int:
    """Root count via the cyclic structure of F_p^x.

    For p coprime to n*a: the count is d = gcd(p-1, n) when
    a**((p-1)/d) = 1 mod p, and 0 otherwise (for a = 1 the criterion
    holds trivially).  Other primes fall back to the brute scan.
    """
    if eq.a == 0 or gcd(p, eq.n * eq.a) != 1:
        return count_roots_brute(eq, p)
    d = gcd(p - 1, eq.n)
    return d if pow_mod(eq.a, (p - 1) // d, p) == 1 else 0


@dataclass(frozen=True)
class WeierstrassCurve:
    """y**2 = x**3 + a*x + b over Z, with optional CM field tag."""

    a: int
    b: int
    cm: QuadOrderSpec | None = None
    label: str | None = None

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve: discriminant is zero")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def is_good_prime(self, p: int) -> bool:
        """Good reduction in the working convention: p >= 5 and p does not divide the discriminant."""
        return p >= 5 and self.discriminant % p != 0


# Named models.  The Cremona-label curves are converted to short form
# (good reduction away from 2 and 3 is preserved, and those primes are
# excluded by convention anyway).
CURVE_PRESETS = {
    # y^2 + xy + y = x^3 - x^2 - 6x - 4
    "17a3": WeierstrassCurve(-7371, -240570, label="17a3"),
    # y^2 + y = x^3 - x^2 - 7x + 10
    "11a2": WeierstrassCurve(-9504, 365904, label="11a2"),
    # y^2 = x^3 - x, CM by Z[i]
    "cm:-1": WeierstrassCurve(-1, 0, cm=QuadOrderSpec(-1), label="cm:-1"),
    # y^2 = x^3 + 1, CM by Z[(1+sqrt(-3))/2]
    "cm:-3": WeierstrassCurve(0, 1, cm=QuadOrderSpec(-3), label="cm:-3"),
}


def parse_curve(text: str) -> WeierstrassCurve:
    """Resolve a preset name or an "a,b" pair of short-Weierstrass coefficients."""
    if text in CURVE_PRESETS:
        return CURVE_PRESETS[text]
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"unknown curve {text!r}: expected a preset name or 'a,b'")
    return WeierstrassCurve(int(parts[0]), int(parts[1]), label=text)


# ---------------------------------------------------------------------------
# Affine point arithmetic (used by the enumeration oracle and small cases).

def ec_add(P, Q, a: int, p: int):
    """Add points on y**2 = x**3 + a*x + b over F_p; None is the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        slope = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        slope = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (slope * slope - x1 - x2) % p
    y3 = (slope * (x1 - x3) - y1) % p
    return x3, y3


def ec_mul(P, k: int, a: int, p: int):
    """k*P by double-and-add."""
    result = None
    addend = P
    while k:
        if k & 1:
            result = ec_add(result, addend, a, p)
        addend = ec_add(addend, addend, a, p)
        k >>= 1
    return result


def ec_points(curve: WeierstrassCurve, p: int) -> list[tuple[int, int]]:
    """All affine points, by scanning x against a square table."""
    a, b = curve.a % p, curve.b % p
    roots_of = {}
    for y in range(p):
        roots_of.setdefault(y * y % p, []).append(y)
    pts = []
    for x in range(p):
        rhs = (x * x % p * x + a * x + b) % p
        for y in roots_of.get(rhs, ()):
            pts.append((x, y))
    return pts


# ---------------------------------------------------------------------------
# Vectorized group data.

@lru_cache(maxsize=None)
def ec_group_data(a: int, b: int, p: int) -> tuple[int, int]:
    """(|E(F_p)| including infinity, number of roots of x**3 + a*x + b).

    Point count via the quadratic-character sum p + 1 + sum_x chi(f(x)),
    chi(0) = 0, evaluated with a residue table.
    """
    a %= p
    b %= p
    if p < 7:
        count = 0
        roots = 0
        squares = {y * y % p for y in range(p)}
        for x in range(p):
            rhs = (x * x * x + a * x + b) % p
            if rhs == 0:
                count += 1
                roots += 1
            elif rhs in squares:
                count += 2
        return count + 1, roots
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int8)
    chi[(x * x) % p] = 1
    chi[0] = 0
    rhs = ((x * x % p + a) * x + b) % p
    return p + 1 + int(chi[rhs].sum()), int((rhs == 0).sum())


def ec_point_count(curve: WeierstrassCurve, p: int) -> int:
    """|E(F_p)| including the point at infinity, for good p >= 5."""
    if not curve.is_good_prime(p):
        raise ValueError(f"p = {p} is a bad prime for {curve}")
    return ec_group_data(curve.a, curve.b, p)[0]


# ---------------------------------------------------------------------------
# Dense polynomial arithmetic over F_p (coefficient lists, index = degree),
# just enough for division-polynomial root counting.

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                out[i + j] = (out[i + j] + c * d) % p
    return _ptrim(out)


def _pmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        factor = f[-1] * inv_lead % p
        if factor:
            for j, c in enumerate(g):
                f[k + j] = (f[k + j] - factor * c) % p
        f.pop()
        _ptrim(f)
    return f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _pow_x_mod(e: int, g, p):
    """x**e reduced mod the polynomial g, by binary exponentiation."""
    result = [1]
    base = _pmod([0, 1], g, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), g, p)
        base = _pmod(_pmul(base, base, p), g, p)
        e >>= 1
    return result


def division_polynomial(ell: int, a: int, b: int, p: int) -> list[int]:
    """The ell-th division polynomial of y**2 = x**3 + ax + b mod p, odd ell.

    Returned in x alone (even-index terms carry an implicit factor y that
    cancels in the standard recurrence); degree (ell**2 - 1)/2, roots are
    the x-coordinates of the nontrivial points with ell*P = infinity.
    """
    if ell % 2 == 0:
        raise ValueError("odd ell only")
    a %= p
    b %= p
    curve_poly = [b, a, 0, 1]
    curve_sq = _pmul(curve_poly, curve_poly, p)
    inv2 = pow(2, -1, p)
    table = {
        0: [],
        1: [1],
        2: [2],
        3: _ptrim([(-a * a) % p, 12 * b % p, 6 * a % p, 0, 3]),
        4: _ptrim(
            [
                (-32 * b * b - 4 * a**3) % p,
                (-16 * a * b) % p,
                (-20 * a * a) % p,
                80 * b % p,
                20 * a % p,
                0,
                4,
            ]
        ),
    }

    def f(k: int):
        if k in table:
            return table[k]
        m, r = divmod(k, 2)
        if r:
            t1 = _pmul(f(m + 2), _pmul(f(m), _pmul(f(m), f(m), p), p), p)
            t2 = _pmul(f(m - 1), _pmul(f(m + 1), _pmul(f(m + 1), f(m + 1), p), p), p)
            if m % 2 == 0:
                t1 = _pmul(t1, curve_sq, p)
            else:
                t2 = _pmul(t2, curve_sq, p)
            out = [(x - y) % p for x, y in _zip_pad(t1, t2)]
        else:
            t1 = _pmul(f(m + 2), _pmul(f(m - 1), f(m - 1), p), p)
            t2 = _pmul(f(m - 2), _pmul(f(m + 1), f(m + 1), p), p)
            diff = [(x - y) % p for x, y in _zip_pad(t1, t2)]
            out = [c * inv2 % p for c in _pmul(f(m), diff, p)]
        out = _ptrim(out)
        table[k] = out
        return out

    return f(ell)


def _zip_pad(f, g):
    length = max(len(f), len(g))
    return zip(f + [0] * (length - len(f)), g + [0] * (length - len(g)))


@lru_cache(maxsize=None)
def _rational_division_root_count(ell: int, a: int, b: int, p: int) -> int:
    """Number of F_p-roots of the ell-th division polynomial."""
    f = division_polynomial(ell, a, b, p)
    xp = _pow_x_mod(p, f, p)
    xp_minus_x = list(xp)
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _pgcd(f, _ptrim(xp_minus_x), p)
    return max(len(g) - 1, 0)


def ec_torsion_count(curve: WeierstrassCurve, p: int, ell: int) -> int:
    """|E(F_p)[ell]| including infinity; 0 for excluded primes (p < 5 or p | ell*disc).

    Derived from the group order m = |E(F_p)|: no order-ell point unless
    ell | m; a full (Z/ell)**2 needs ell | p - 1 (Weil pairing) and
    ell**2 | m; in the remaining ambiguous case the count is read off the
    rational root count r of the ell-th division polynomial (the quadratic
    twist carries no ell-torsion there, so the count is 2r + 1).
    """
    if p < 5 or (ell * curve.discriminant) % p == 0:
        return 0
    m, cubic_roots = ec_group_data(curve.a, curve.b, p)
    if ell == 2:
        return 1 + cubic_roots
    if m % ell != 0:
        return 1
    if (p - 1) % ell != 0 or m % (ell * ell) != 0:
        return ell
    r = _rational_division_root_count(ell, curve.a % p, curve.b % p, p)
    count = 2 * r + 1
    if count not in (ell, ell * ell):
        raise ArithmeticError(
            f"torsion count {count} for {curve} at p={p}, ell={ell} is not in {{ell, ell**2}}"
        )
    return count


def ec_torsion_count_enum(curve: WeierstrassCurve, p: int, ell: int) -> int:
    """Oracle: enumerate affine points and count those with ell*P = infinity."""
    if p < 5 or (ell * curve.discriminant) % p == 0:
        return 0
    a = curve.a % p
    count = 1
    for P in ec_points(curve, p):
        if ec_mul(P, ell, a, p) is None:
            count += 1
    return count
