"""Gaussian integers and the quartic residue symbol.

Symbol values are reported as exponents k in 0..3 meaning i**k, or through
:func:`quartic_symbol` as a :class:`GaussianInt` unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from apollo.numtheory import factor, two_squares_prime


class SharedFactorError(ValueError):
    """Numerator and denominator of a residue symbol are not coprime."""


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int
    im: int

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __divmod__(self, other: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
        q = GaussianInt(*_round_quotient(self.re, self.im, other.re, other.im))
        return q, self - q * other

    def __mod__(self, other: GaussianInt) -> GaussianInt:
        return divmod(self, other)[1]

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_odd(self) -> bool:
        return self.norm() % 2 == 1

    def is_primary(self) -> bool:
        return (self.re % 4, self.im % 4) in ((1, 0), (3, 2))

    def exact_div(self, other: GaussianInt) -> GaussianInt | None:
        """self / other if it lies in Z[i], else None."""
        n = other.norm()
        x = self.re * other.re + self.im * other.im
        y = self.im * other.re - self.re * other.im
        if x % n or y % n:
            return None
        return GaussianInt(x // n, y // n)


ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS = (ONE, I, GaussianInt(-1, 0), GaussianInt(0, -1))


def _round_div(x: int, n: int) -> int:
    # nearest integer to x/n (n > 0); exact halves go toward -infinity
    return -((n - 2 * x) // (2 * n))


def _round_quotient(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    n = c * c + d * d
    if n == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    return _round_div(a * c + b * d, n), _round_div(b * c - a * d, n)


def _gmod(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    qx, qy = _round_quotient(a, b, c, d)
    return a - (qx * c - qy * d), b - (qx * d + qy * c)


def _primary(a: int, b: int) -> tuple[int, int, int]:
    """(a', b', k) with a' + b'i = i**k (a + bi) primary; a + bi must be odd."""
    for k in range(4):
        if (a % 4, b % 4) in ((1, 0), (3, 2)):
            return a, b, k
        a, b = -b, a
    raise ValueError("only odd Gaussian integers have a primary associate")


def primary_associate(alpha: GaussianInt) -> tuple[GaussianInt, int]:
    """The unique primary associate beta = i**k * alpha of an odd alpha."""
    if not alpha.is_odd():
        raise ValueError(f"{alpha} is even or zero; it has no primary associate")
    a, b, k = _primary(alpha.re, alpha.im)
    return GaussianInt(a, b), k


def quartic_exponent(alpha: GaussianInt, beta: GaussianInt) -> int:
    """k in 0..3 such that the quartic residue symbol (alpha/beta)_4 equals i**k.

    Never factors beta: a Euclidean reduction loop in the style of the Jacobi
    symbol algorithm, using the supplementary laws for i and 1+i and quartic
    reciprocity between primary elements.
    """
    if not beta.is_odd():
        raise ValueError(f"denominator {beta} must be odd")
    a, b = alpha.re, alpha.im
    c, d, _ = _primary(beta.re, beta.im)  # unit factors of the denominator contribute 1
    e = 0
    while True:
        if c * c + d * d == 1:
            return e % 4
        a, b = _gmod(a, b, c, d)
        if a == 0 and b == 0:
            raise SharedFactorError(f"{alpha} and {beta} share a factor")
        # remove powers of 1 + i: (a + bi)/(1 + i) = ((a + b) + (b - a)i)/2
        while (a + b) % 2 == 0:
            a, b = (a + b) // 2, (b - a) // 2
            e += (c - d - d * d - 1) // 4
        a, b, k = _primary(a, b)
        # alpha = i**(-k) * alpha'
        e -= k * ((1 - c) // 2)
        na, nb = a * a + b * b, c * c + d * d
        if ((na - 1) // 4) * ((nb - 1) // 4) % 2:
            e += 2
        a, b, c, d = c, d, a, b


def quartic_symbol(alpha: GaussianInt, beta: GaussianInt) -> GaussianInt:
    """(alpha/beta)_4 as one of the units 1, i, -1, -i."""
    return UNITS[quartic_exponent(alpha, beta)]


def sum_two_squares_all(m: int) -> list[GaussianInt]:
    """Every x + yi with x**2 + y**2 = m and x >= y >= 0, ordered by decreasing x.

    Empty exactly when some prime 3 mod 4 divides m to an odd power.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [ONE]
    base = ONE
    split: list[tuple[GaussianInt, int]] = []
    for p, e in factor(m):
        if p == 2:
            for _ in range(e):
                base = base * GaussianInt(1, 1)
        elif p % 4 == 3:
            if e % 2:
                return []
            base = base * p ** (e // 2)
        else:
            split.append((GaussianInt(*two_squares_prime(p)), e))

    found = set()
    for exps in product(*(range(e + 1) for _, e in split)):
        z = base
        for (pi, e), j in zip(split, exps):
            for _ in range(j):
                z = z * pi
            for _ in range(e - j):
                z = z * pi.conj()
        found.add(_canonical(z))
    return sorted(found, key=lambda g: (-g.re, g.im))


def _canonical(z: GaussianInt) -> GaussianInt:
    x, y = sorted((abs(z.re), abs(z.im)), reverse=True)
    return GaussianInt(x, y)
