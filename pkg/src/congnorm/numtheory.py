"""Exact integer number theory: valuations, square parts, exact divisors, phi and lambda.

Everything here is deterministic trial-division arithmetic on Python ints.
Levels of interest stay well below 10**6, so no advanced factoring is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m >= 1 as a sorted tuple of (p, exponent)."""
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            out.append((p, e))
    # wheel over 6k +- 1
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            if e:
                out.append((q, e))
        p += 6
    if m > 1:
        out.append((m, 1))
    return tuple(sorted(out))


def primes_of(m: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(m))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def valuation(p: int, m: int) -> int:
    """p-adic valuation of m: the largest k with p**k dividing m."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


@dataclass(frozen=True)
class SquarePart:
    """Decomposition m = s**2 * t with t squarefree."""

    s: int
    t: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ValueError("square part components must be positive")


@lru_cache(maxsize=None)
def square_part(m: int) -> SquarePart:
    """Split m >= 1 as s**2 * t with t squarefree."""
    if m < 1:
        raise ValueError(f"square_part needs a positive integer, got {m}")
    s = t = 1
    for p, e in factorize(m):
        s *= p ** (e // 2)
        if e % 2:
            t *= p
    return SquarePart(s, t)


def is_squarefree(m: int) -> bool:
    return m >= 1 and square_part(m).s == 1


@dataclass(frozen=True)
class ExactDivisor:
    """A divisor mu of n with gcd(mu, n/mu) = 1, remembering its ambient n."""

    n: int
    mu: int

    def __post_init__(self):
        if self.n < 1 or self.mu < 1 or self.n % self.mu != 0:
            raise ValueError(f"{self.mu} does not divide {self.n}")
        if gcd(self.mu, self.n // self.mu) != 1:
            raise ValueError(f"{self.mu} is not an exact divisor of {self.n}")

    @property
    def complement(self) -> int:
        return self.n // self.mu


def is_exact_divisor(mu: int, n: int) -> bool:
    return n >= 1 and mu >= 1 and n % mu == 0 and gcd(mu, n // mu) == 1


def exact_divisors(n: int) -> list[ExactDivisor]:
    """All exact divisors of n, sorted ascending; 2**(number of primes of n) of them."""
    if n < 1:
        raise ValueError("level must be positive")
    prime_powers = [p**e for p, e in factorize(n)]
    mus = [1]
    for q in prime_powers:
        mus += [m * q for m in mus]
    return [ExactDivisor(n, mu) for mu in sorted(mus)]


def exact_divisor_product(mu: ExactDivisor, nu: ExactDivisor) -> ExactDivisor:
    """Group law mu * nu / gcd(mu, nu)**2 on exact divisors of a common n."""
    if mu.n != nu.n:
        raise ValueError(f"exact divisors of different levels: {mu.n} vs {nu.n}")
    d = gcd(mu.mu, nu.mu)
    return ExactDivisor(mu.n, mu.mu * nu.mu // (d * d))


def exact_divisor_project(mu: ExactDivisor, d: int) -> frozenset[int]:
    """Project mu to the prime set of a divisor d of n: primes of mu that divide d.

    The result is a set of primes, not an exact divisor of d; the quotient group
    for d is indexed by primes and is generally not realized by exact divisors of d.
    """
    if d < 1 or mu.n % d != 0:
        raise ValueError(f"{d} does not divide {mu.n}")
    return frozenset(p for p in primes_of(mu.mu) if d % p == 0)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted ascending."""
    if n < 1:
        raise ValueError("divisors of nonpositive integer")
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def euler_phi(n: int) -> int:
    """Euler's totient, by the product formula over primes of n."""
    if n < 1:
        raise ValueError("euler_phi needs a positive integer")
    out = n
    for p in primes_of(n):
        out = out // p * (p - 1)
    return out


def carmichael_lambda(n: int) -> int:
    """Exponent of the unit group mod n; phi on odd prime powers, phi/2 for 2**k, k >= 3."""
    if n < 1:
        raise ValueError("carmichael_lambda needs a positive integer")
    out = 1
    for p, e in factorize(n):
        q = p**e
        lam = euler_phi(q)
        if p == 2 and e >= 3:
            lam //= 2
        out = out * lam // gcd(out, lam)
    return out
