"""Descartes quadruples, the Apollonian moves, and the quadruple/form correspondence.

Operations that single out circles are positional: the circle of interest is
entry 0 (and its partner entry 1 for :func:`tangent_family`). Callers permute
explicitly.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import NamedTuple

from apollo.numtheory import checked


class InvalidQuadrupleError(ValueError):
    """Four integers that do not form a primitive Descartes quadruple."""


class DescartesEquationError(InvalidQuadrupleError):
    pass


class NonPositiveSumError(InvalidQuadrupleError):
    pass


class ImprimitiveError(InvalidQuadrupleError):
    pass


class Quadruple(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self) -> str:
        return "({}, {}, {}, {})".format(*self)


class QuadForm(NamedTuple):
    """Positive definite form A x^2 + B xy + C y^2 of discriminant -4 n^2."""

    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def n(self) -> int:
        return isqrt(-self.discriminant // 4)

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y


class TangentFamily(NamedTuple):
    """f(x) = p2 x^2 - p1 x + p0, the curvatures tangent to two fixed circles."""

    p2: int
    p1: int
    p0: int

    def __call__(self, x: int) -> int:
        return self.p2 * x * x - self.p1 * x + self.p0


def validate(*entries) -> Quadruple:
    """Check four integers form a primitive Descartes quadruple and return it.

    Accepts ``validate(a, b, c, d)`` or ``validate((a, b, c, d))``.
    """
    if len(entries) == 1:
        entries = tuple(entries[0])
    if len(entries) != 4 or not all(isinstance(x, int) for x in entries):
        raise InvalidQuadrupleError(f"expected four integers, got {entries!r}")
    for x in entries:
        checked(x)
    a, b, c, d = entries
    s = a + b + c + d
    lhs, rhs = s * s, 2 * (a * a + b * b + c * c + d * d)
    if lhs != rhs:
        raise DescartesEquationError(
            f"Descartes equation violated for {entries}: {lhs} != {rhs}"
        )
    if s <= 0:
        raise NonPositiveSumError(f"curvature sum of {entries} is {s}, must be positive")
    if gcd(gcd(a, b), gcd(c, d)) != 1:
        raise ImprimitiveError(f"{entries} is not primitive")
    return Quadruple(a, b, c, d)


def apply_move(q: Quadruple, i: int) -> Quadruple:
    """Move S_i (i in 1..4): swap circle i for the other circle tangent to the remaining three."""
    if i not in (1, 2, 3, 4):
        raise IndexError(f"move index must be 1..4, got {i}")
    j = i - 1
    new = checked(2 * (sum(q) - q[j]) - q[j])
    return Quadruple(*(new if k == j else x for k, x in enumerate(q)))


def reduce_to_root(q: Quadruple) -> Quadruple:
    """Apply sum-decreasing moves until none exists; return the root sorted ascending."""
    q = Quadruple(*q)
    while True:
        s = sum(q)
        for i in range(4):
            if 2 * (s - q[i]) - q[i] < q[i]:
                q = apply_move(q, i + 1)
                break
        else:
            return Quadruple(*sorted(q))


def form_of(q: Quadruple) -> QuadForm:
    """The form attached to circle q[0]: (a+b)x^2 + (a+b+c-d)xy + (a+c)y^2."""
    a, b, c, d = q
    if a == 0:
        raise ValueError("form_of needs a nonzero first curvature")
    return QuadForm(a + b, a + b + c - d, a + c)


def quad_of(f: QuadForm, a: int) -> Quadruple:
    """Inverse of :func:`form_of` for a form of discriminant -4 a^2."""
    A, B, C = f
    if a == 0:
        raise ValueError("quad_of needs a nonzero curvature")
    if f.discriminant != -4 * a * a:
        raise ValueError(f"form {tuple(f)} has discriminant {f.discriminant}, expected {-4 * a * a}")
    return Quadruple(a, A - a, C - a, A + C - B - a)


def tangent_family(q: Quadruple) -> TangentFamily:
    """Curvatures of the circles tangent to both q[0] and q[1], as a quadratic in x."""
    a, b, c, d = q
    if a + b == 0:
        raise ValueError(f"{tuple(q)}: circles a and b are parallel lines, the family is degenerate")
    return TangentFamily(a + b, a + b + c - d, c)


def coprime_neighbor(q: Quadruple, modulus: int) -> tuple[int, int, Quadruple]:
    """Find the x of least |x| (positive first on ties) with gcd(f(x), modulus) = 1.

    f is the tangent family of q[0], q[1]. Returns (x, f(x), (a, b, f(x), f(x+1))),
    the last being a Descartes quadruple realizing the tangency.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    f = tangent_family(q)
    cap = 2 * modulus + 2
    for step in range(cap + 1):
        for x in ((step, -step) if step else (0,)):
            m = f(x)
            if gcd(m, modulus) == 1:
                return x, m, Quadruple(q[0], q[1], m, checked(f(x + 1)))
    raise RuntimeError(
        f"no curvature coprime to {modulus} tangent to {q[0]} and {q[1]} within |x| <= {cap}"
    )
