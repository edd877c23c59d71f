"""Subgroups H of (Z/NZ)^x, the congruence groups Gamma_H they label, and the
invariants controlling their normalizers.

A subgroup is stored as the explicit set of its residues; all invariants here
need pair enumeration anyway and phi(N) stays desk-scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .numtheory import carmichael_lambda, divisors, exact_divisors, square_part


def units(n: int) -> tuple[int, ...]:
    """Residues of (Z/nZ)^x; for n = 1 the single residue 0."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return (0,)
    return tuple(x for x in range(1, n) if gcd(x, n) == 1)


@dataclass(frozen=True)
class ResidueSubgroup:
    """A subgroup of (Z/NZ)^x given by its sorted residue set."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = frozenset(self.elements)
        if self.n == 1:
            if elems != {0}:
                raise ValueError("the unit group mod 1 is the single residue 0")
            return
        if 1 not in elems:
            raise ValueError("subgroup must contain 1")
        for x in elems:
            if not (1 <= x < self.n) or gcd(x, self.n) != 1:
                raise ValueError(f"{x} is not a unit mod {self.n}")
            if pow(x, -1, self.n) not in elems:
                raise ValueError(f"subgroup not closed under inversion at {x}")
            for y in elems:
                if (x * y) % self.n not in elems:
                    raise ValueError(f"subgroup not closed under product at {x}*{y}")

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x % self.n in self._set

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "ResidueSubgroup") -> bool:
        return self.n == other.n and self._set <= other._set


def _make(n: int, elems) -> ResidueSubgroup:
    return ResidueSubgroup(n, tuple(sorted(set(elems))))


def full_subgroup(n: int) -> ResidueSubgroup:
    return _make(n, units(n))


def trivial_subgroup(n: int) -> ResidueSubgroup:
    return _make(n, [1 % n])


def subgroup_kernel(n: int, d: int) -> ResidueSubgroup:
    """Kernel of (Z/N)^x -> (Z/D)^x: units congruent to 1 mod D.  Labels
    Gamma0(N) intersected with Gamma1(D)."""
    if d < 1 or n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    if n == 1:
        return trivial_subgroup(1)
    return _make(n, [x for x in units(n) if x % d == 1 % d])


def subgroup_torsion(n: int, m: int) -> ResidueSubgroup:
    """Units whose order divides m, for m dividing lambda(N)."""
    lam = carmichael_lambda(n)
    if m < 1 or lam % m != 0:
        raise ValueError(f"{m} does not divide lambda({n}) = {lam}")
    if n == 1:
        return trivial_subgroup(1)
    return _make(n, [x for x in units(n) if pow(x, m, n) == 1])


def subgroup_square_kernel(n: int, d: int) -> ResidueSubgroup:
    """Units of Z/N whose square is 1 mod D; these label discriminant kernels."""
    if d < 1 or n % d != 0:
        raise ValueError(f"{d} does not divide {n}")
    if n == 1:
        return trivial_subgroup(1)
    return _make(n, [x for x in units(n) if (x * x) % d == 1 % d])


def _extend_closure(n: int, hset: frozenset[int], g: int) -> frozenset[int]:
    """Closure of a subgroup set and one extra unit: union of cosets h*g^k."""
    out = set(hset)
    coset = {(e * g) % n for e in hset}
    while not coset <= out:
        out |= coset
        coset = {(e * g) % n for e in coset}
    return frozenset(out)


def subgroup_generated(n: int, gens) -> ResidueSubgroup:
    """Multiplicative closure of the given residues."""
    if n == 1:
        return trivial_subgroup(1)
    closure = frozenset({1})
    for g in gens:
        if gcd(g, n) != 1:
            raise ValueError(f"{g} is not a unit mod {n}")
        closure = _extend_closure(n, closure, g % n)
    return _make(n, closure)


def pm_extend(h: ResidueSubgroup) -> ResidueSubgroup:
    """Adjoin -1 (i.e. N - 1) to H."""
    if h.n <= 2:
        return h
    return _make(h.n, _extend_closure(h.n, h._set, h.n - 1))


def min_kernel_level(n: int, h: ResidueSubgroup) -> int:
    """The smallest K with s_N*t_N | K | N whose kernel mod K sits inside H."""
    if h.n != n:
        raise ValueError("subgroup modulus mismatch")
    sp = square_part(n)
    base = sp.s * sp.t
    for k in divisors(n):
        if k % base == 0 and all(x in h for x in range(1, n, k) if gcd(x, n) == 1):
            return k
    raise AssertionError("kernel mod N is trivial, so a level always exists")


def inverse_diff_gcd(n: int, h: ResidueSubgroup) -> int:
    """gcd of N and all differences e - h over inverse pairs (e, h) in H.

    Integer lifts of a pair differ by multiples of N, so folding N into the
    gcd matches the all-lifts definition.
    """
    if h.n != n:
        raise ValueError("subgroup modulus mismatch")
    if n == 1:
        return 1
    g = n
    for e in h.elements:
        g = gcd(g, e - pow(e, -1, n))
        if g == 1:
            break
    return g


def sigma_of_subgroup(n: int, h: ResidueSubgroup) -> int:
    """sigma_H = gcd(N/K_H, eta_H); the normalizer of Gamma_H sits in
    Gamma0*^{sigma_H}(N)."""
    return gcd(n // min_kernel_level(n, h), inverse_diff_gcd(n, h))


def atkin_lehner_residue(n: int, mu: int, t: int) -> int:
    """Residue congruent to t^(-1) mod mu and to t mod N/mu (CRT combination)."""
    if gcd(t, n) != 1:
        raise ValueError(f"{t} is not a unit mod {n}")
    if mu < 1 or n % mu != 0 or gcd(mu, n // mu) != 1:
        raise ValueError(f"{mu} is not an exact divisor of {n}")
    if n == 1:
        return 0
    if mu == 1:
        return t % n
    co = n // mu
    t_inv = pow(t % mu, -1, mu)
    co_inv = pow(co % mu, -1, mu)
    return (t + co * ((co_inv * (t_inv - t)) % mu)) % n


def is_atkin_lehner_stable(n: int, h: ResidueSubgroup) -> bool:
    """Whether every partial inversion mu maps H into H (then Gamma0*(N)
    normalizes Gamma_H)."""
    if h.n != n:
        raise ValueError("subgroup modulus mismatch")
    for div in exact_divisors(n):
        for t in h.elements:
            if atkin_lehner_residue(n, div.mu, t) not in h:
                return False
    return True


def all_subgroups(n: int) -> list[ResidueSubgroup]:
    """Every subgroup of (Z/nZ)^x, by closing known subgroups under one extra
    generator until stable.  Fine for phi(n) in the low hundreds."""
    if n == 1:
        return [trivial_subgroup(1)]
    us = units(n)
    seen = {frozenset({1})}
    frontier = [frozenset({1})]
    while frontier:
        hset = frontier.pop()
        for g in us:
            if g in hset:
                continue
            bigger = _extend_closure(n, hset, g)
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    groups = [_make(n, s) for s in seen]
    return sorted(groups, key=lambda s: (len(s), s.elements))


@dataclass(frozen=True)
class GammaHMembership:
    """Membership test for Gamma_H: integer det-1 matrices with N | c and
    diagonal residue in H."""

    n: int
    h: ResidueSubgroup

    def __post_init__(self):
        if self.h.n != self.n:
            raise ValueError("subgroup modulus mismatch")

    def contains(self, mat) -> bool:
        a, b, c, d = _as_int_entries(mat)
        if a * d - b * c != 1:
            return False
        return c % self.n == 0 and a in self.h


def _as_int_entries(mat) -> tuple[int, int, int, int]:
    if hasattr(mat, "int_entries"):
        return mat.int_entries()
    (a, b), (c, d) = mat
    return a, b, c, d
