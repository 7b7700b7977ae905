"""Packing types, the chi_2 / chi_4 invariants, and the obstructions they force."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from apollo.gaussian import GaussianInt, I, ONE, primary_associate, quartic_exponent, sum_two_squares_all
from apollo.numtheory import is_perfect_power, kronecker, odd_part_and_v2
from apollo.packing import Quadruple, coprime_neighbor, form_of

# Residues mod 24 of all curvatures in a packing, keyed by type (size, k).
ADMISSIBLE: dict[tuple[int, int], frozenset[int]] = {
    (6, 1): frozenset({0, 1, 4, 9, 12, 16}),
    (6, 5): frozenset({0, 5, 8, 12, 20, 21}),
    (6, 13): frozenset({0, 4, 12, 13, 16, 21}),
    (6, 17): frozenset({0, 8, 9, 12, 17, 20}),
    (8, 7): frozenset({3, 6, 7, 10, 15, 18, 19, 22}),
    (8, 11): frozenset({2, 3, 6, 11, 14, 15, 18, 23}),
}

# (2|n), (3|n) for n coprime to 6, by n mod 24.
KRONECKER_2_3: dict[int, tuple[int, int]] = {
    1: (1, 1),
    5: (-1, -1),
    13: (-1, 1),
    17: (1, -1),
    7: (1, -1),
    11: (-1, 1),
    19: (-1, -1),
    23: (1, 1),
}


class Chi4(enum.Enum):
    """chi_4 up to complex conjugation; the sign of an imaginary value depends on orientation."""

    PLUS = "1"
    MINUS = "-1"
    IMAGINARY = "i*"
    NOT_APPLICABLE = "n/a"

    @classmethod
    def from_exponent(cls, k: int) -> Chi4:
        return (cls.PLUS, cls.IMAGINARY, cls.MINUS, cls.IMAGINARY)[k % 4]


QUARTIC_TYPES = ((6, 1), (6, 17))


@dataclass(frozen=True)
class PackingType:
    size: int
    k: int
    chi2: int
    chi4: Chi4 = Chi4.NOT_APPLICABLE

    def __post_init__(self):
        if (self.size, self.k) not in ADMISSIBLE:
            raise ValueError(f"({self.size}, {self.k}) is not a packing type")
        if self.chi2 not in (1, -1):
            raise ValueError(f"chi2 must be +1 or -1, got {self.chi2}")
        has_chi4 = self.chi4 is not Chi4.NOT_APPLICABLE
        if has_chi4 != ((self.size, self.k) in QUARTIC_TYPES):
            raise ValueError(f"chi4 applies exactly to types {QUARTIC_TYPES}")
        if has_chi4 and (self.chi4 is Chi4.IMAGINARY) != (self.chi2 == -1):
            raise ValueError("chi4 squared must equal chi2")

    @property
    def key(self) -> tuple:
        """Row key of the obstruction table; chi4 only matters when chi2 = 1."""
        if self.chi4 is Chi4.NOT_APPLICABLE or self.chi2 == -1:
            return (self.size, self.k, self.chi2)
        return (self.size, self.k, self.chi2, int(self.chi4.value))

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.key) + ")"


@dataclass(frozen=True, order=True)
class ObstructionFamily:
    """S_{d,u} = {u w^d : w >= 1}."""

    d: int
    u: int

    def __post_init__(self):
        allowed = {2: (1, 2, 3, 6), 4: (1, 4, 9, 36)}
        if self.u not in allowed.get(self.d, ()):
            raise ValueError(f"unsupported obstruction family u={self.u}, d={self.d}")

    def __contains__(self, m: int) -> bool:
        return m > 0 and m % self.u == 0 and is_perfect_power(m // self.u, self.d)

    def __str__(self) -> str:
        return f"{self.u if self.u != 1 else ''}n^{self.d}"


@dataclass(frozen=True)
class ObstructionReport:
    type: PackingType
    families: tuple[ObstructionFamily, ...]
    false_classes: tuple[int, ...]
    open_classes: tuple[int, ...]


# type key -> (quadratic u's, quartic u's, residues where finitely-many-missing fails, residues still open)
OBSTRUCTION_TABLE: dict[tuple, tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = {
    (6, 1, 1, 1): ((), (), (), (0, 1, 4, 9, 12, 16)),
    (6, 1, 1, -1): ((), (1, 4, 9, 36), (0, 1, 4, 9, 12, 16), ()),
    (6, 1, -1): ((1, 2, 3, 6), (), (0, 1, 4, 9, 12, 16), ()),
    (6, 5, 1): ((2, 3), (), (0, 8, 12), (5, 20, 21)),
    (6, 5, -1): ((1, 6), (), (0, 12), (5, 8, 20, 21)),
    (6, 13, 1): ((2, 6), (), (0,), (4, 12, 13, 16, 21)),
    (6, 13, -1): ((1, 3), (), (0, 4, 12, 16), (13, 21)),
    (6, 17, 1, 1): ((3, 6), (9, 36), (0, 9, 12), (8, 17, 20)),
    (6, 17, 1, -1): ((3, 6), (1, 4), (0, 9, 12), (8, 17, 20)),
    (6, 17, -1): ((1, 2), (), (0, 8, 9, 12), (17, 20)),
    (8, 7, 1): ((3, 6), (), (3, 6), (7, 10, 15, 18, 19, 22)),
    (8, 7, -1): ((2,), (), (18,), (3, 6, 7, 10, 15, 19, 22)),
    (8, 11, 1): ((), (), (), (2, 3, 6, 11, 14, 15, 18, 23)),
    (8, 11, -1): ((2, 3, 6), (), (2, 3, 6, 18), (11, 14, 15, 23)),
}


def admissible_residues(size: int, k: int) -> frozenset[int]:
    try:
        return ADMISSIBLE[(size, k)]
    except KeyError:
        raise ValueError(f"({size}, {k}) is not a packing type") from None


def residue_type(q: Quadruple) -> tuple[int, int]:
    """Type (size, k) of the packing containing q, read off q mod 3 and mod 8."""
    mod3 = {1} if any(x % 3 == 1 for x in q) else {2}
    odd8 = {x % 8 for x in q if x % 2}
    if odd8 == {1}:
        mod8 = {0, 1, 4}
    elif odd8 == {5}:
        mod8 = {0, 4, 5}
    elif odd8 == {3, 7}:
        mod8 = {2, 3, 6, 7}
    else:
        raise ValueError(f"{tuple(q)} has odd entries {sorted(odd8)} mod 8; not a primitive quadruple")
    residues = frozenset(r for r in range(24) if r % 3 in mod3 | {0} and r % 8 in mod8)
    k = min(r for r in residues if gcd(r, 24) == 1)
    t = (len(residues), k)
    assert ADMISSIBLE[t] == residues
    return t


def rho_of(n: int, m: int) -> int:
    """Positive properly represented residue of f_C for a circle n with coprime tangent neighbor m."""
    if n == 0 or gcd(n, m) != 1 or n + m <= 0:
        raise ValueError(f"need tangent curvatures with n != 0, gcd(n, m) = 1, n + m > 0; got ({n}, {m})")
    return n + m


def chi2_at(q: Quadruple) -> int:
    """chi_2 of the circle q[0], using q[1] as its coprime tangent neighbor."""
    n, m = q[0], q[1]
    rho = rho_of(n, m)
    r = n % 4
    if r in (0, 1):
        return kronecker(rho, n)
    if r == 2:
        return kronecker(-rho, n // 2)
    return kronecker(2 * rho, n)


def select_circle(q: Quadruple) -> Quadruple:
    """Reorder q around a circle of positive odd curvature n with a coprime neighbor.

    Returns (n, m, c, d) with gcd(n, m) = 1. Every primitive quadruple has two
    odd entries and at most one negative entry, so no move is ever needed.
    """
    p = next(i for i, x in enumerate(q) if x > 0 and x % 2)
    rest = [q[i] for i in range(4) if i != p]
    n = q[p]
    _, m, r = coprime_neighbor(Quadruple(n, *rest), n)
    return Quadruple(n, m, r.b, r.d)


def chi2(q: Quadruple) -> int:
    return chi2_at(select_circle(q))


@dataclass(frozen=True)
class LatticeBasis:
    """Basis (beta, delta) of a sublattice of Z[i] whose norm form is a circle's form."""

    beta: GaussianInt
    delta: GaussianInt
    n: int

    def gram(self) -> tuple[int, int, int]:
        cross = self.beta * self.delta.conj()
        return self.beta.norm(), 2 * cross.re, self.delta.norm()

    def covolume(self) -> int:
        return abs((self.beta.conj() * self.delta).im)


def lattice_of(q: Quadruple) -> LatticeBasis:
    """Recover the Gaussian lattice attached to circle q[0].

    Searches beta with N(beta) = A over the two-squares representations and their
    unit/conjugate images, and takes delta = conj((B/2 + eps*n*i)/beta) when that
    division is exact.
    """
    n = q[0]
    if n < 1:
        raise ValueError(f"lattice_of needs a positive curvature in position 0, got {n}")
    A, B, C = form_of(q)
    for base in sum_two_squares_all(A):
        for k in range(4):
            unit = (ONE, I, I * I, I * I * I)[k]
            for beta in (unit * base, unit * base.conj()):
                for eps in (1, -1):
                    gamma = GaussianInt(B // 2, eps * n).exact_div(beta)
                    if gamma is not None:
                        basis = LatticeBasis(beta, gamma.conj(), n)
                        assert basis.gram() == (A, B, C)
                        return basis
    raise RuntimeError(f"no Gaussian lattice found for form {(A, B, C)} of {tuple(q)}")


def chi4_at(q: Quadruple) -> int:
    """Raw chi_4 exponent k (value i**k) at circle q[0], with q[1] a coprime tangent neighbor.

    Handles odd and even curvatures; q[0] must be positive and the packing of type
    (6, 1) or (6, 17).
    """
    n, m = q[0], q[1]
    if n < 1 or gcd(n, m) != 1:
        raise ValueError(f"need positive n coprime to its neighbor, got ({n}, {m})")
    beta = lattice_of(q).beta
    if n % 2:
        return quartic_exponent(beta, GaussianInt(n, 0))
    beta, _ = primary_associate(beta)
    e, odd = odd_part_and_v2(n)
    k = quartic_exponent(beta, GaussianInt(odd, 0))
    if n % 8 == 0:
        b = beta.im
        if b % 4:
            raise AssertionError(f"primary beta {beta} for n={n} has imaginary part not divisible by 4")
        return (k + 2 * ((b * e // 4) % 2)) % 4
    if n % 8 == 4:
        return (k + (2 if kronecker(-1, odd) == -1 else 0)) % 4
    raise ValueError(f"curvature {n} is 2 mod 4; chi4 is only defined for types (6,1), (6,17)")


def chi4(q: Quadruple) -> Chi4:
    if residue_type(q) not in QUARTIC_TYPES:
        return Chi4.NOT_APPLICABLE
    return Chi4.from_exponent(chi4_at(select_circle(q)))


def extended_type(q: Quadruple) -> PackingType:
    size, k = residue_type(q)
    sel = select_circle(q)
    c4 = Chi4.from_exponent(chi4_at(sel)) if (size, k) in QUARTIC_TYPES else Chi4.NOT_APPLICABLE
    return PackingType(size, k, chi2_at(sel), c4)


def obstructions_for(t: PackingType) -> ObstructionReport:
    quad, quart, false_cls, open_cls = OBSTRUCTION_TABLE[t.key]
    families = tuple(ObstructionFamily(2, u) for u in quad) + tuple(ObstructionFamily(4, u) for u in quart)
    return ObstructionReport(t, families, false_cls, open_cls)
