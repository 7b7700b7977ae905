"""Integer arithmetic: Kronecker symbols, 64-bit factorization, checked int64 ops."""

from math import gcd, isqrt
import random

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)

Factorization = list[tuple[int, int]]


def checked(x: int) -> int:
    """Return x, or raise OverflowError if it does not fit a signed 64-bit word."""
    if x > INT64_MAX or x < INT64_MIN:
        raise OverflowError(f"{x} overflows a signed 64-bit integer")
    return x


def odd_part_and_v2(n: int) -> tuple[int, int]:
    """Split n = 2**e * m with m odd; the sign of n stays on m."""
    if n == 0:
        raise ValueError("odd part of 0 is undefined")
    e = (n & -n).bit_length() - 1
    return e, n >> e


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for every pair of integers except (0, 0) -> 0.

    Binary algorithm: strip factors of two from the denominator using (a|2),
    then run the Jacobi reciprocity loop on odd values.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0

    acc = 1
    if n < 0:
        n = -n
        if a < 0:
            acc = -1

    e, n = odd_part_and_v2(n)
    if e & 1 and (a & 7) in (3, 5):
        acc = -acc

    # n is now odd and positive; (a|n) is a Jacobi symbol
    a %= n
    while a:
        while not a & 1:
            a >>= 1
            if (n & 7) in (3, 5):
                acc = -acc
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_LIMIT = 10_000


def factor(n: int) -> Factorization:
    """Complete prime factorization of 2 <= n <= 2**63 - 1, as sorted (prime, exponent) pairs."""
    if n < 2 or n > INT64_MAX:
        raise ValueError(f"factor() needs 2 <= n <= 2**63-1, got {n}")
    found: dict[int, int] = {}
    p = 2
    while p < _TRIAL_LIMIT and p * p <= n:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        # fixed seed keeps factorization reproducible run to run
        rng = random.Random(n)
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                found[m] = found.get(m, 0) + 1
                continue
            d = _pollard_brent(m, rng)
            stack += [d, m // d]
    return sorted(found.items())


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    for c in range(2, p):
        if kronecker(c, p) == -1:
            return pow(c, (p - 1) // 4, p)
    raise ValueError(f"{p} is not a prime congruent to 1 mod 4")


def two_squares_prime(p: int) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as x**2 + y**2 with x > y > 0 (Cornacchia)."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    r0, r1 = p, sqrt_minus_one(p)
    limit = isqrt(p)
    while r1 > limit:
        r0, r1 = r1, r0 % r1
    x = r1
    y = isqrt(p - x * x)
    assert x * x + y * y == p
    return (x, y) if x > y else (y, x)


def is_perfect_power(m: int, d: int) -> bool:
    """True iff m = w**d for a positive integer w (d in {2, 4})."""
    if m < 1:
        return False
    r = isqrt(m)
    if r * r != m:
        return False
    if d == 2:
        return True
    if d == 4:
        s = isqrt(r)
        return s * s == r
    raise ValueError(f"unsupported power {d}")
