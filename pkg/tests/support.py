"""Independent oracles and shared fixtures for the test suite.

Oracles here deliberately avoid the package's own algorithms: trial division
instead of Pollard rho, Euler's criterion instead of the reciprocity loop,
unpruned breadth-first search instead of the pruned kernel.
"""

from __future__ import annotations

import functools
from collections import deque
from math import isqrt

from apollo.enumeration import CurvatureBitmap, enumerate_curvatures
from apollo.gaussian import GaussianInt
from apollo.packing import Quadruple

# (criterion number, title, passed, detail) in completion order
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


@functools.lru_cache(maxsize=None)
def bitmap(root: tuple[int, ...], N: int) -> CurvatureBitmap:
    return enumerate_curvatures(Quadruple(*root), N)


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\0\0"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def legendre(a: int, p: int) -> int:
    """Euler's criterion for an odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def brute_jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd positive n via its factorization."""
    out = 1
    for p, e in trial_factor(n):
        out *= legendre(a, p) ** e
    return out


def euler_quartic(alpha: GaussianInt, pi: GaussianInt) -> int:
    """Exponent k with alpha**((N(pi)-1)/4) = i**k mod a Gaussian prime pi, or None if pi | alpha."""
    p = pi.norm()
    if pi.im != 0 and pi.re != 0:
        # split prime: Z[i]/pi = Z/p with i -> -re/im
        iota = (-pi.re * pow(pi.im, -1, p)) % p
        v = (alpha.re + alpha.im * iota) % p
        if v == 0:
            return None
        w = pow(v, (p - 1) // 4, p)
        for k in range(4):
            if w == pow(iota, k, p):
                return k
        raise AssertionError("Euler power is not a unit")
    # inert prime q: work in Z[i]/q, a field with q**2 elements
    q = abs(pi.re) + abs(pi.im)
    a = GaussianInt(alpha.re % q, alpha.im % q)
    if not a:
        return None
    e = (p - 1) // 4
    acc = GaussianInt(1, 0)
    while e:
        if e & 1:
            acc = GaussianInt((acc * a).re % q, (acc * a).im % q)
        a = GaussianInt((a * a).re % q, (a * a).im % q)
        e >>= 1
    units = [(1, 0), (0, 1), (q - 1, 0), (0, q - 1)]
    return units.index((acc.re, acc.im))


def primary_primes(max_norm: int) -> list[GaussianInt]:
    """Primary Gaussian primes of norm <= max_norm, built from rational primes."""
    out = []
    for p in primes_upto(max_norm):
        if p == 2:
            continue
        if p % 4 == 3:
            if p * p <= max_norm:
                out.append(GaussianInt(-p, 0))  # -p = 1 mod 4 is primary
            continue
        a = next(x for x in range(1, isqrt(p) + 1) if isqrt(p - x * x) ** 2 == p - x * x)
        b = isqrt(p - a * a)
        for z in (GaussianInt(a, b), GaussianInt(a, -b)):
            for _ in range(4):
                if z.is_primary():
                    out.append(z)
                    break
                z = GaussianInt(-z.im, z.re)
    return out


def naive_curvatures(root: tuple[int, ...], N: int) -> set[int]:
    """Breadth-first search over ordered quadruples with all four moves and a visited set."""
    root = tuple(root)
    seen = {root}
    queue = deque([root])
    found = set()
    while queue:
        q = queue.popleft()
        found.update(x for x in q if 1 <= x <= N)
        s = sum(q)
        for j in range(4):
            child = list(q)
            child[j] = 2 * (s - q[j]) - q[j]
            child = tuple(child)
            if max(child) <= N and child not in seen:
                seen.add(child)
                queue.append(child)
    return found
