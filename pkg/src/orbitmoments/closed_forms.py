"""Exact evaluation of the limiting moment and density formulas.

Every function returns Fraction (or int where the value is integral by
construction); floating point never enters.  Where two published forms of
the same quantity exist, both are evaluated and cross-checked, and a
mismatch raises ArithmeticError rather than silently picking one.
"""

from fractions import Fraction

from .core_arith import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    kronecker_symbol,
    mobius,
)
from .residue_algebra import QuadOrderSpec

# Exact rational values; Fraction keeps canonical reduced form with a
# positive denominator and structural equality.
ExactRational = Fraction


def p_poly(a: int, b: int, k: int) -> int:
    """P_k(a, b) = (a**k - b**k)/(a - b), evaluated as sum of a**i * b**(k-1-i).

    P_0 = 0 and P_1 = 1; symmetric in a and b.  Requires a != b.
    """
    if a == b:
        raise ValueError("p_poly requires a != b")
    if k < 0:
        raise ValueError("k must be >= 0")
    return sum(a**i * b ** (k - 1 - i) for i in range(k))


def mk_divisor_sum(n: int, k: int) -> Fraction:
    """Divisor form: sum over de | n of d**k * mu(e) / phi(de)."""
    total = Fraction(0)
    for d in divisors(n):
        for e in divisors(n // d):
            mu = mobius(e)
            if mu:
                total += Fraction(d**k * mu, euler_phi(d * e))
    return total


def mk_euler_product(n: int, k: int) -> Fraction:
    """Product form: over ell**s || n, factor 1 + sum_e P_k(ell**e, ell**(e-1))."""
    value = 1
    for ell, s in factorize(n):
        value *= 1 + sum(p_poly(ell**e, ell ** (e - 1), k) for e in range(1, s + 1))
    return Fraction(value)


def mk(n: int, k: int) -> Fraction:
    """Generalized divisor function M_k(n); M_0 = 1 and M_1 = d(n).

    Both the divisor sum and the Euler product are computed; disagreement
    is a hard fault.  The result is always a non-negative integer.
    """
    if n < 1 or k < 0:
        raise ValueError("mk expects n >= 1 and k >= 0")
    a = mk_divisor_sum(n, k)
    b = mk_euler_product(n, k)
    if a != b:
        raise ArithmeticError(f"mk({n}, {k}): divisor sum {a} != euler product {b}")
    return a


def dk(n: int, spec: QuadOrderSpec) -> int:
    """Number of ideal divisors of n*O_K.

    Multiplicative over rational primes: the factor at ell**a || n is
    (a+1)**2, 2a+1, or a+1 according as ell splits, ramifies, or is inert
    in K; at a prime ell this gives 4, 3, 2.
    """
    if n < 1:
        raise ValueError("dk expects n >= 1")
    value = 1
    for ell, a in factorize(n):
        sym = kronecker_symbol(spec.discriminant, ell)
        if sym == 1:
            value *= (a + 1) ** 2
        elif sym == 0:
            value *= 2 * a + 1
        else:
            value *= a + 1
    return value


def gl2_moment(ell: int, k: int) -> Fraction:
    """k-th moment for the full GL2 action on pairs mod a prime ell."""
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    if k < 0:
        raise ValueError("k must be >= 0")
    num = (
        ell**4
        - 2 * ell**3
        - ell**2
        + 3 * ell
        + ell**k * (ell**3 - 2 * ell - 1)
        + ell ** (2 * k)
    )
    return Fraction(num, (ell**2 - ell) * (ell**2 - 1))


def noncm_moment(n: int, k: int) -> Fraction:
    """k-th moment for surjective mod-ell images at every ell | n, square-free n.

    Product over ell | n of
    (ell**(2k-1) + ell**(k-1)(ell**3 - 2ell - 1) + ell**3 - 2ell**2 - ell + 3)
    / ((ell-1)**2 (ell+1)).
    """
    if n < 1 or mobius(n) == 0:
        raise ValueError("noncm_moment is defined for square-free n only")
    if k < 1:
        raise ValueError("k must be >= 1")
    value = Fraction(1)
    for ell, _ in factorize(n):
        num = (
            ell ** (2 * k - 1)
            + ell ** (k - 1) * (ell**3 - 2 * ell - 1)
            + ell**3
            - 2 * ell**2
            - ell
            + 3
        )
        value *= Fraction(num, (ell - 1) ** 2 * (ell + 1))
    return value


def cm_moment(ell: int, k: int, dk_ell: int) -> Fraction:
    """k-th moment at an odd prime ell for a curve with CM by the full ring O_K.

    dk_ell is 4, 3, or 2 according as ell splits, ramifies, or is inert.
    Evaluates both the single-fraction form and the three-density form and
    cross-checks them.
    """
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if k < 0:
        raise ValueError("k must be >= 0")
    if dk_ell not in (2, 3, 4):
        raise ValueError("dk_ell must be 2, 3, or 4")
    num = (
        ell ** (2 * k)
        + (dk_ell - 1) * (ell ** (k + 1) + ell**k)
        + 2 * ell**2
        - (dk_ell - 1) * ell
        - (dk_ell + 2)
    )
    closed = Fraction(num, 2 * (ell**2 - 1))
    by_densities = (
        Fraction(2 * ell**2 - (dk_ell - 1) * ell - (dk_ell + 2), 2 * (ell**2 - 1))
        + ell**k * Fraction(dk_ell - 1, 2 * (ell - 1))
        + ell ** (2 * k) * Fraction(1, 2 * (ell**2 - 1))
    )
    if closed != by_densities:
        raise ArithmeticError(
            f"cm_moment({ell}, {k}, {dk_ell}): {closed} != {by_densities}"
        )
    return closed


def inert_partial_moment(ell: int, k: int) -> Fraction:
    """Contribution of the inert-or-ramified primes: (ell-2 + ell**k)/(2(ell-1)).

    Equals mk(ell, k)/2.
    """
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if k < 0:
        raise ValueError("k must be >= 0")
    return Fraction(ell - 2, 2 * (ell - 1)) + Fraction(ell**k, 2 * (ell - 1))


def split_densities(ell: int, dk_ell: int) -> tuple[Fraction, Fraction, Fraction]:
    """Densities of split primes with torsion count 1, ell, ell**2; sum is 1/2."""
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if dk_ell not in (2, 3, 4):
        raise ValueError("dk_ell must be 2, 3, or 4")
    d0 = Fraction(ell**2 - (dk_ell - 2) * ell - dk_ell, 2 * (ell**2 - 1))
    d1 = Fraction(dk_ell - 2, 2 * (ell - 1))
    d2 = Fraction(1, 2 * (ell**2 - 1))
    return d0, d1, d2


def gl2_densities(ell: int) -> tuple[Fraction, Fraction, Fraction]:
    """Densities of primes with torsion count 1, ell, ell**2 under full GL2 image.

    (ell**4 - 2ell**3 - ell**2 + 3ell, ell**3 - 2ell - 1, 1), each over
    (ell**2 - ell)(ell**2 - 1); the three sum to 1.
    """
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    denom = (ell**2 - ell) * (ell**2 - 1)
    return (
        Fraction(ell**4 - 2 * ell**3 - ell**2 + 3 * ell, denom),
        Fraction(ell**3 - 2 * ell - 1, denom),
        Fraction(1, denom),
    )
