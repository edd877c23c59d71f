"""The even lattices L(N, D) of signature (2, 1) inside traceless 2x2 matrices,
their automorphism groups under the conjugation action, discriminant groups and
discriminant kernels, plus the conjugated (T, M, D) families.

The quadratic space is traceless matrices with (X, Y) = Tr(X*Y); L(N, D) is
spanned by sqrt(D/N)*E, sqrt(N*D)*F and sqrt(N/D)*H for the standard nilpotent
and diagonal generators E, F, H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .gammastar import (
    GammaStarElem,
    Matrix2,
    SqrtRat,
    from_matrix,
    matrix_of,
    normalize_presentation,
    sigma_level,
)
from .numtheory import factorize, primes_of
from .subgroups import GammaHMembership, subgroup_square_kernel


def _v2(m: int) -> int:
    k = 0
    while m % 2 == 0:
        m //= 2
        k += 1
    return k


def basis_e() -> Matrix2:
    return Matrix2.from_rows([(0, 1), (0, 0)])


def basis_h() -> Matrix2:
    return Matrix2.from_rows([(1, 0), (0, -1)])


def basis_f() -> Matrix2:
    return Matrix2.from_rows([(0, 0), (1, 0)])


def pairing(x: Matrix2, y: Matrix2) -> SqrtRat:
    """Trace form Tr(X*Y); (X, X) = -2 det X."""
    prod = x * y
    return prod.e + prod.h


@dataclass(frozen=True)
class LatticeND:
    """The lattice L(N, D): hyperbolic plane rescaled by D plus a norm 2N/D line."""

    n: int
    d: int

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or self.n % self.d != 0:
            raise ValueError(f"D = {self.d} must divide N = {self.n}")

    @property
    def basis(self) -> tuple[Matrix2, Matrix2, Matrix2]:
        """(sqrt(D/N)*E, sqrt(ND)*F, sqrt(N/D)*H)."""
        n, d = self.n, self.d
        return (
            basis_e().scale(SqrtRat.make(Fraction(1, n), d * n)),  # sqrt(D/N)
            basis_f().scale(SqrtRat.sqrt(n * d)),
            basis_h().scale(SqrtRat.make(Fraction(1, d), n * d)),  # sqrt(N/D)
        )

    @property
    def dual_generators(self) -> tuple[Matrix2, Matrix2, Matrix2]:
        """Generators of the dual: E/sqrt(DN), sqrt(N/D)*F, sqrt(D)*H/(2*sqrt(N))."""
        n, d = self.n, self.d
        return (
            basis_e().scale(SqrtRat.make(Fraction(1, d * n), d * n)),  # 1/sqrt(DN)
            basis_f().scale(SqrtRat.make(Fraction(1, d), n * d)),  # sqrt(N/D)
            basis_h().scale(SqrtRat.make(Fraction(1, 2 * n), d * n)),  # sqrt(D)/(2 sqrt(N))
        )

    @property
    def disc_orders(self) -> tuple[int, int, int]:
        """Orders (D, D, 2N/D) of the discriminant group on the E, F, H generators."""
        return (self.d, self.d, 2 * self.n // self.d)


def gram(lat: LatticeND) -> list[list[int]]:
    """Exact Gram matrix [[0, D, 0], [D, 0, 0], [0, 0, 2N/D]] in the stored basis."""
    basis = lat.basis
    out = []
    for x in basis:
        row = []
        for y in basis:
            val = pairing(x, y)
            if not val.is_integer:
                raise AssertionError(f"non-integral pairing {val} in L({lat.n},{lat.d})")
            row.append(int(val.q))
        out.append(row)
    return out


def gram_det(lat: LatticeND) -> int:
    g = gram(lat)
    return (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    )


def dual_basis(lat: LatticeND) -> tuple[Matrix2, Matrix2, Matrix2]:
    """The strict dual basis, pairing to the identity with lat.basis."""
    e_gen, f_gen, h_gen = lat.dual_generators
    # the trace form pairs E against F, so the dual of (E', F', H') is (F'', E'', H'')
    return (f_gen, e_gen, h_gen)


def acts_on_lattice(a: GammaStarElem, lat: LatticeND) -> bool:
    """Whether conjugation by a preserves L(N, D): nine integrality conditions."""
    if a.n != lat.n:
        raise ValueError(f"level mismatch: element at {a.n}, lattice at {lat.n}")
    n, d = lat.n, lat.d
    mu = a.mu
    co = Fraction(n, mu)
    aa, bb, cc, dd = a.a, a.b, a.c, a.d
    vals = [
        aa * aa * mu,
        d * aa * cc,
        cc * cc * co,
        Fraction(2 * n, d) * aa * bb,
        aa * dd * mu + bb * cc * co,
        Fraction(2 * n, d) * cc * dd,
        bb * bb * co,
        d * bb * dd,
        dd * dd * mu,
    ]
    return all(v.denominator == 1 for v in vals)


def saut_plus_sigma(lat: LatticeND) -> int:
    """sigma with SAut+(L(N, D)) = Gamma0*^sigma(N): gcd(D, 2N/D) / 2^theta."""
    n, d = lat.n, lat.d
    theta = 1 if 2 * _v2(d) == _v2(n) + 1 else 0
    val = gcd(d, 2 * n // d)
    assert val % 2**theta == 0
    return val >> theta


@dataclass(frozen=True)
class DiscAutomorphism:
    """Action on the discriminant group in dual coordinates (E, F, H parts):
    columns are generator images, entry (i, j) reduced mod orders[i]."""

    orders: tuple[int, int, int]
    matrix: tuple[tuple[int, int, int], ...]

    @property
    def is_identity(self) -> bool:
        ident = [[1 % self.orders[i] if i == j else 0 for j in range(3)] for i in range(3)]
        return self.matrix == tuple(tuple(r) for r in ident)

    def compose(self, other: "DiscAutomorphism") -> "DiscAutomorphism":
        if self.orders != other.orders:
            raise ValueError("discriminant group mismatch")
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                val = sum(self.matrix[i][k] * other.matrix[k][j] for k in range(3))
                row.append(val % self.orders[i])
            out.append(tuple(row))
        return DiscAutomorphism(self.orders, tuple(out))


def disc_action(a, lat: LatticeND) -> DiscAutomorphism:
    """Action of a Gamma0*(N) element on the discriminant group of L(N, D).

    Columns give the images of the E, F, H dual generators; a Gamma0(N) element
    scales the E and F generators by a^2 and d^2 mod D and fixes the H one.
    """
    if not isinstance(a, GammaStarElem):
        elem = from_matrix(lat.n, a if isinstance(a, Matrix2) else Matrix2.from_rows(a))
        if elem is None:
            raise ValueError("matrix does not lie over level N")
        a = elem
    if a.n != lat.n:
        raise ValueError(f"level mismatch: element at {a.n}, lattice at {lat.n}")
    if sigma_level(a) != 1:
        raise ValueError("discriminant action needs an element of Gamma0*(N)")
    a = normalize_presentation(a)
    n, d = lat.n, lat.d
    mu = a.mu
    co = Fraction(n, mu)
    aa, bb, cc, dd = a.a, a.b, a.c, a.d
    cols = [
        (aa * aa * mu, -cc * cc * co, -2 * aa * cc * Fraction(n, d)),
        (-bb * bb * co, dd * dd * mu, 2 * bb * dd * Fraction(n, d)),
        (-aa * bb * d, cc * dd * d, aa * dd * mu + bb * cc * co),
    ]
    orders = lat.disc_orders
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            val = cols[j][i]
            if val.denominator != 1:
                raise AssertionError(f"non-integral discriminant action entry {val}")
            row.append(int(val) % orders[i])
        rows.append(tuple(row))
    return DiscAutomorphism(orders, tuple(rows))


def disc_action_by_conjugation(a: GammaStarElem, lat: LatticeND) -> DiscAutomorphism:
    """Independent route: conjugate the rescaled dual generators as matrices and
    solve for coordinates; must agree with disc_action."""
    n, d = lat.n, lat.d
    mat = matrix_of(a)
    # rescaled duals E/D, (N/D)*F, H/2 (global rescale leaves coordinates alone)
    duals = [
        basis_e().scale(SqrtRat.make(Fraction(1, d))),
        basis_f().scale(SqrtRat.make(Fraction(n, d))),
        basis_h().scale(SqrtRat.make(Fraction(1, 2))),
    ]
    orders = lat.disc_orders
    rows = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    for j, vec in enumerate(duals):
        img = mat.conjugate(vec)
        # coordinates: x*(E/D) + y*(N/D)F + z*(H/2) has entries (z/2, x/D; y N/D, -z/2)
        x = (img.f * d).as_fraction()
        y = (img.g * Fraction(d, n)).as_fraction()
        z = (img.e * 2).as_fraction()
        for i, val in enumerate((x, y, z)):
            if val.denominator != 1:
                raise AssertionError("non-integral dual coordinate")
            rows[i][j] = int(val) % orders[i]
    return DiscAutomorphism(orders, tuple(tuple(r) for r in rows))


def discriminant_kernel(lat: LatticeND) -> GammaHMembership:
    """The subgroup of Gamma0(N) acting trivially on the discriminant group:
    diagonal residues with square 1 mod D."""
    h = subgroup_square_kernel(lat.n, lat.d)
    return GammaHMembership(lat.n, h)


def stabilizer_tests(a: GammaStarElem, lat: LatticeND) -> tuple[bool, bool, bool]:
    """(stabilizes the H-part subgroup, fixes it pointwise, does not mix E/F).

    The first needs integral products ab, ac, bd, cd; the second additionally mu
    coprime to N/D, the third additionally mu coprime to D.
    """
    if not acts_on_lattice(a, lat):
        raise ValueError("element does not act on the lattice")
    a = normalize_presentation(a)
    stab = sigma_level(a) == 1
    fixes = stab and gcd(a.mu, lat.n // lat.d) == 1
    separates = stab and gcd(a.mu, lat.d) == 1
    return stab, fixes, separates


@dataclass(frozen=True)
class ConjFamilyLattice:
    """The (T, M, D) conjugate of L(MT, D): spanned by sqrt(DM/T)*E,
    sqrt(DT/M)*F and sqrt(MT/D)*H."""

    t: int
    m: int
    d: int

    def __post_init__(self):
        if (self.m * self.t) % self.d != 0:
            raise ValueError(f"D = {self.d} must divide M*T = {self.m * self.t}")

    @property
    def n(self) -> int:
        return self.m * self.t

    @property
    def base(self) -> LatticeND:
        return LatticeND(self.n, self.d)

    @property
    def conjugator(self) -> Matrix2:
        """diag(sqrt(M), 1/sqrt(M)), carrying L(MT, D) onto this lattice."""
        m = self.m
        zero = SqrtRat.make(0)
        return Matrix2(SqrtRat.sqrt(m), zero, zero, SqrtRat.make(Fraction(1, m), m))

    @property
    def basis(self) -> tuple[Matrix2, Matrix2, Matrix2]:
        p = self.conjugator
        return tuple(p.conjugate(v) for v in self.base.basis)

    def gram(self) -> list[list[int]]:
        out = []
        for x in self.basis:
            row = []
            for y in self.basis:
                val = pairing(x, y)
                if not val.is_integer:
                    raise AssertionError("non-integral pairing in conjugated lattice")
                row.append(int(val.q))
            out.append(row)
        return out

    @property
    def saut_sigma(self) -> int:
        return saut_plus_sigma(self.base)

    def saut_contains(self, mat: Matrix2) -> bool:
        """SAut+ membership: conjugate back to level MT and bound the sigma-level."""
        p = self.conjugator
        x = from_matrix(self.n, p.inverse() * mat * p)
        return x is not None and self.saut_sigma % sigma_level(x) == 0

    def kernel_contains(self, mat) -> bool:
        """Discriminant kernel: T | c, M | b, diagonal squares 1 mod D."""
        from .subgroups import _as_int_entries

        a, b, c, d = _as_int_entries(mat)
        if a * d - b * c != 1:
            return False
        return (
            c % self.t == 0
            and b % self.m == 0
            and (a * a) % self.d == 1 % self.d
            and (d * d) % self.d == 1 % self.d
        )


def conj_family_lattice(t: int, m: int, d: int) -> ConjFamilyLattice:
    return ConjFamilyLattice(t, m, d)


def iso_invariants(lat: LatticeND):
    """Isomorphism data: minimal rescale gcd(D, N/D), per-prime counts of
    order-p subgroups of the discriminant group, and its invariant factors.

    The invariant factors are included because the rescale plus the counts do
    not separate all pairs (L(2,1) and L(4,1) share both).
    """
    n, d = lat.n, lat.d
    rescale_min = gcd(d, n // d)
    orders = lat.disc_orders
    counts = []
    for p in primes_of(n):
        k = sum(1 for o in orders if o % p == 0)
        counts.append((p, (p**k - 1) // (p - 1)))
    return rescale_min, tuple(counts), _invariant_factors(orders)


def _invariant_factors(orders) -> tuple[int, ...]:
    """Invariant factor chain d_1 | d_2 | ... of a product of cyclic groups."""
    primary: dict[int, list[int]] = {}
    for o in orders:
        for p, e in factorize(o):
            primary.setdefault(p, []).append(e)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for p, exps in primary.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                f *= p ** exps_sorted[i]
        factors.append(f)
    return tuple(sorted(f for f in factors if f > 1))
