"""Independent group-theoretic verification: coset enumeration of Gamma_H in
SL2(Z) through the mod-N permutation representation, Schreier generators, and
conjugation-based normalizer checks.

Right cosets of Gamma_H are classified by the bottom row mod N up to left
multiplication by diagonal residues in H, so the tables stay small.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .gammastar import (
    GammaStarElem,
    atkin_lehner,
    int_matrix,
    lower_unipotent,
    matrix_of,
    multiply,
    upper_unipotent,
)
from .numtheory import divisors, exact_divisors, square_part
from .subgroups import GammaHMembership, ResidueSubgroup

DEFAULT_LEVEL_BOUND = 30

GEN_S = (0, -1, 1, 0)
GEN_T = (1, 1, 0, 1)


class CosetBoundError(ValueError):
    """Requested level exceeds the configured coset-enumeration bound."""


def _mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def _inv(x):
    a, b, c, d = x
    if a * d - b * c != 1:
        raise ValueError("not a determinant-1 matrix")
    return (d, -b, -c, a)


@dataclass(frozen=True)
class CosetTable:
    """Right cosets of Gamma_H in SL2(Z) with transitions for S and T."""

    membership: GammaHMembership
    reps: tuple[tuple[int, int, int, int], ...]
    trans_s: tuple[int, ...]
    trans_t: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.reps)


def gamma_h_lift(n: int, e: int) -> tuple[int, int, int, int]:
    """An integer matrix in Gamma_H with diagonal (e, e^-1) mod N and c = N."""
    if n == 1:
        return (1, 0, 1, 1)
    h = pow(e, -1, n)
    return (e, (e * h - 1) // n, n, h)


def enumerate_cosets(
    n: int, h: ResidueSubgroup, bound: int = DEFAULT_LEVEL_BOUND
) -> CosetTable:
    """BFS over right cosets of Gamma_H under right multiplication by S and T."""
    if n > bound:
        raise CosetBoundError(f"level {n} exceeds bound {bound}")
    if h.n != n:
        raise ValueError("subgroup modulus mismatch")
    membership = GammaHMembership(n, h)
    hset = tuple(h.elements) if n > 1 else (0,)

    def key(mat):
        c, d = mat[2] % n, mat[3] % n
        return min(((e * c) % n, (e * d) % n) for e in hset)

    ident = (1, 0, 0, 1)
    reps = [ident]
    lookup = {key(ident): 0}
    i = 0
    while i < len(reps):
        for gen in (GEN_S, GEN_T):
            nxt = _mul(reps[i], gen)
            k = key(nxt)
            if k not in lookup:
                lookup[k] = len(reps)
                reps.append(nxt)
        i += 1
    ts = tuple(lookup[key(_mul(r, GEN_S))] for r in reps)
    tt = tuple(lookup[key(_mul(r, GEN_T))] for r in reps)
    return CosetTable(membership, tuple(reps), ts, tt)


@lru_cache(maxsize=None)
def _cached_table(n: int, h: ResidueSubgroup, bound: int) -> CosetTable:
    return enumerate_cosets(n, h, bound)


@dataclass(frozen=True)
class SchreierGenSet:
    """Integer matrices generating Gamma_H, extracted from a closed coset table."""

    membership: GammaHMembership
    gens: tuple[tuple[int, int, int, int], ...]


def schreier_generators(table: CosetTable) -> SchreierGenSet:
    """For each coset rep r and generator x: r*x*rep(coset(r*x))^(-1)."""
    out = []
    seen = set()
    ident = (1, 0, 0, 1)
    for gen, trans in ((GEN_S, table.trans_s), (GEN_T, table.trans_t)):
        for i, r in enumerate(table.reps):
            g = _mul(_mul(r, gen), _inv(table.reps[trans[i]]))
            if g == ident or g in seen:
                continue
            if not table.membership.contains([(g[0], g[1]), (g[2], g[3])]):
                raise AssertionError(f"Schreier element {g} escaped the subgroup")
            seen.add(g)
            out.append(g)
    return SchreierGenSet(table.membership, tuple(out))


def oracle_normalizes(
    a: GammaStarElem, h: ResidueSubgroup, bound: int = DEFAULT_LEVEL_BOUND
) -> bool:
    """Whether a conjugates Gamma_H onto itself, checked on Schreier generators
    with exact matrix arithmetic in both directions."""
    n = a.n
    if h.n != n:
        raise ValueError("level mismatch")
    table = _cached_table(n, h, bound)
    gens = schreier_generators(table).gens
    mat = matrix_of(a)
    mat_inv = mat.inverse()
    member = table.membership
    for g in gens:
        gm = int_matrix(*g)
        for conj in (mat * gm * mat_inv, mat_inv * gm * mat):
            if not conj.is_integral or not member.contains(conj):
                return False
    return True


def oracle_sigma(n: int, h: ResidueSubgroup, bound: int = DEFAULT_LEVEL_BOUND) -> int:
    """Largest sigma | s_N whose designated boundary elements all normalize
    Gamma_H, with sharpness at every prime step above it.

    Designated elements: the unipotents (1, 1/sigma; 0, 1) and (1, 0; N/sigma, 1),
    one Atkin-Lehner element per exact divisor, and their products.
    """
    s_n = square_part(n).s
    feasible = set()
    al_elems = [atkin_lehner(n, div.mu) for div in exact_divisors(n)]
    for sig in divisors(s_n):
        probes = [upper_unipotent(n, sig), lower_unipotent(n, sig)]
        for w in al_elems:
            probes.append(w)
            probes.append(multiply(w, probes[0]))
            probes.append(multiply(w, probes[1]))
        if all(oracle_normalizes(x, h, bound) for x in probes):
            feasible.add(sig)
    if not feasible:
        raise ValueError(
            "no sigma certified: the normalizer is a proper subgroup of Gamma0*(N)"
        )
    best = max(feasible)
    for p in {2, 3, 5, 7}:
        if s_n % (best * p) == 0 and best * p in feasible:
            raise AssertionError(f"sigma probe not sharp at {best * p}")
    return best


def gamma00_index(m_lower: int, d_upper: int, bound: int = DEFAULT_LEVEL_BOUND) -> int:
    """Index in SL2(Z) of the group with m_lower | c and d_upper | b, by coset
    enumeration mod lcm of the two."""
    k = m_lower * d_upper // gcd(m_lower, d_upper)
    if k > bound:
        raise CosetBoundError(f"modulus {k} exceeds bound {bound}")
    if k == 1:
        return 1
    image = [
        (a, b, c, d)
        for a in range(k)
        for b in range(0, k, d_upper)
        for c in range(0, k, m_lower)
        for d in range(k)
        if (a * d - b * c) % k == 1
    ]

    def key(mat):
        g = tuple(x % k for x in mat)
        return min(tuple(v % k for v in _mul(u, g)) for u in image)

    ident = (1, 0, 0, 1)
    reps = [ident]
    lookup = {key(ident): 0}
    i = 0
    while i < len(reps):
        for gen in (GEN_S, GEN_T):
            nxt = _mul(reps[i], gen)
            kk = key(nxt)
            if kk not in lookup:
                lookup[kk] = len(reps)
                reps.append(nxt)
        i += 1
    return len(reps)


def gamma0_index(n: int, bound: int = DEFAULT_LEVEL_BOUND) -> int:
    """Index of Gamma0(N) in SL2(Z) via the generic enumeration."""
    return gamma00_index(n, 1, bound)
