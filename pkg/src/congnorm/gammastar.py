"""Exact arithmetic in the extended groups Gamma0*^sigma(N).

Elements are stored as a level N, an exact divisor mu of N, and four rationals
(a, b, c, d) with s_mu * a, s_mu * d, s_{N/mu} * b, s_{N/mu} * c integral and
a*d*mu - b*c*(N/mu) = 1.  The associated real matrix is

    ( a*sqrt(mu)          b/sqrt(mu)  )
    ( c*(N/mu)*sqrt(mu)   d*sqrt(mu)  )

Matrix entries live in the ring Q*sqrt(t) for squarefree t; sums of entries
with unequal radicands are rejected, which never happens for the matrices
arising from these presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numtheory import exact_divisors, is_exact_divisor, square_part


class SqrtRatError(ArithmeticError):
    """An operation left the representable set q * sqrt(n)."""


class NotExactDivisor(ValueError):
    pass


class DenominatorTooLarge(ValueError):
    pass


class DeterminantNotOne(ValueError):
    pass


@dataclass(frozen=True)
class SqrtRat:
    """The real number q * sqrt(n) with q rational and n squarefree positive."""

    q: Fraction
    n: int

    def __post_init__(self):
        if self.n < 1 or square_part(self.n).s != 1:
            raise ValueError(f"radicand {self.n} is not squarefree positive")
        if self.q == 0 and self.n != 1:
            raise ValueError("zero must carry radicand 1")

    @staticmethod
    def make(q, n: int = 1) -> "SqrtRat":
        """Build q * sqrt(n), absorbing the square part of n into q."""
        q = Fraction(q)
        if n < 1:
            raise ValueError(f"radicand must be positive, got {n}")
        if q == 0:
            return SqrtRat(Fraction(0), 1)
        sp = square_part(n)
        return SqrtRat(q * sp.s, sp.t)

    @staticmethod
    def sqrt(n: int) -> "SqrtRat":
        return SqrtRat.make(1, n)

    @property
    def is_zero(self) -> bool:
        return self.q == 0

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    @property
    def is_integer(self) -> bool:
        return self.n == 1 and self.q.denominator == 1

    def as_fraction(self) -> Fraction:
        if self.n != 1:
            raise SqrtRatError(f"{self} is irrational")
        return self.q

    def __add__(self, other: "SqrtRat") -> "SqrtRat":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.n != other.n:
            raise SqrtRatError(f"cannot add {self} and {other}")
        return SqrtRat.make(self.q + other.q, self.n)

    def __neg__(self) -> "SqrtRat":
        return SqrtRat(-self.q, self.n)

    def __sub__(self, other: "SqrtRat") -> "SqrtRat":
        return self + (-other)

    def __mul__(self, other) -> "SqrtRat":
        if isinstance(other, SqrtRat):
            return SqrtRat.make(self.q * other.q, self.n * other.n)
        return SqrtRat.make(self.q * Fraction(other), self.n)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtRat":
        if isinstance(other, SqrtRat):
            if other.is_zero:
                raise ZeroDivisionError
            # q/q' * sqrt(n)/sqrt(n') = q/(q' n') * sqrt(n n')
            return SqrtRat.make(self.q / (other.q * other.n), self.n * other.n)
        return SqrtRat.make(self.q / Fraction(other), self.n)

    def div_by_sqrt(self, m: int) -> Fraction | None:
        """self / sqrt(m) when rational, else None."""
        if self.is_zero:
            return Fraction(0)
        sp = square_part(m)
        if sp.t != self.n:
            return None
        return self.q / sp.s

    def __str__(self):
        if self.n == 1:
            return str(self.q)
        if self.q == 1:
            return f"sqrt({self.n})"
        return f"{self.q}*sqrt({self.n})"

    __repr__ = __str__


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix with SqrtRat entries, row-major (e, f; g, h)."""

    e: SqrtRat
    f: SqrtRat
    g: SqrtRat
    h: SqrtRat

    @staticmethod
    def from_rows(rows) -> "Matrix2":
        (e, f), (g, h) = rows
        conv = lambda x: x if isinstance(x, SqrtRat) else SqrtRat.make(x)
        return Matrix2(conv(e), conv(f), conv(g), conv(h))

    @staticmethod
    def identity() -> "Matrix2":
        return Matrix2.from_rows([(1, 0), (0, 1)])

    def det(self) -> SqrtRat:
        return self.e * self.h - self.f * self.g

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e * other.e + self.f * other.g,
            self.e * other.f + self.f * other.h,
            self.g * other.e + self.h * other.g,
            self.g * other.f + self.h * other.h,
        )

    def inverse(self) -> "Matrix2":
        if self.det() != SqrtRat.make(1):
            raise DeterminantNotOne(f"matrix has determinant {self.det()}")
        return Matrix2(self.h, -self.f, -self.g, self.e)

    def conjugate(self, other: "Matrix2") -> "Matrix2":
        """self * other * self^(-1)."""
        return self * other * self.inverse()

    def scale(self, r) -> "Matrix2":
        return Matrix2(self.e * r, self.f * r, self.g * r, self.h * r)

    @property
    def is_integral(self) -> bool:
        return all(x.is_integer for x in self.entries())

    def entries(self):
        return (self.e, self.f, self.g, self.h)

    def int_entries(self) -> tuple[int, int, int, int]:
        if not self.is_integral:
            raise SqrtRatError(f"{self} is not an integer matrix")
        return tuple(int(x.q) for x in self.entries())

    def __str__(self):
        return f"[[{self.e}, {self.f}], [{self.g}, {self.h}]]"

    __repr__ = __str__


def int_matrix(a: int, b: int, c: int, d: int) -> Matrix2:
    return Matrix2.from_rows([(a, b), (c, d)])


@dataclass(frozen=True)
class GammaStarElem:
    """Element of Gamma0*^{s_N}(N): level, exact divisor mu and rationals a, b, c, d."""

    n: int
    mu: int
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def summands(self) -> tuple[int, int]:
        """The presentation-independent integers (a*d*mu, b*c*(N/mu))."""
        u = self.a * self.d * self.mu
        w = self.b * self.c * (self.n // self.mu)
        if u.denominator != 1 or w.denominator != 1:
            raise AssertionError(f"summands of {self} are not integral")
        return int(u), int(w)

    def __str__(self):
        return f"GammaStar(N={self.n}, mu={self.mu}, {self.a}, {self.b}, {self.c}, {self.d})"

    __repr__ = __str__


def elem_new(n: int, mu: int, a, b, c, d) -> GammaStarElem:
    """Validated element: checks the exact divisor, denominator bounds and determinant."""
    if not is_exact_divisor(mu, n):
        raise NotExactDivisor(f"{mu} is not an exact divisor of {n}")
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    s_mu = square_part(mu).s
    s_co = square_part(n // mu).s
    for name, val, bound in (("a", a, s_mu), ("d", d, s_mu), ("b", b, s_co), ("c", c, s_co)):
        if bound % val.denominator != 0:
            raise DenominatorTooLarge(
                f"{name} = {val} has denominator not dividing {bound} (mu={mu}, N={n})"
            )
    det = a * d * mu - b * c * (n // mu)
    if det != 1:
        raise DeterminantNotOne(f"a*d*mu - b*c*(N/mu) = {det}, expected 1")
    return GammaStarElem(n, mu, a, b, c, d)


def identity_elem(n: int) -> GammaStarElem:
    return elem_new(n, 1, 1, 0, 0, 1)


def minus_identity(n: int) -> GammaStarElem:
    return elem_new(n, 1, -1, 0, 0, -1)


def fricke(n: int) -> GammaStarElem:
    """The Fricke element (0, -1/sqrt(N); sqrt(N), 0), divisor mu = N."""
    return elem_new(n, n, 0, -1, 1, 0)


def atkin_lehner(n: int, mu: int) -> GammaStarElem:
    """An Atkin-Lehner type element with divisor mu and integer coefficients."""
    if not is_exact_divisor(mu, n):
        raise NotExactDivisor(f"{mu} is not an exact divisor of {n}")
    x, y = _bezout(mu, n // mu)
    return elem_new(n, mu, x, y, -1, 1)


def _bezout(u: int, v: int) -> tuple[int, int]:
    """(x, y) with x*u + y*v = gcd(u, v)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    a, b = u, v
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def upper_unipotent(n: int, sigma: int) -> GammaStarElem:
    """(1, 1/sigma; 0, 1), a boundary element of sigma-level exactly sigma."""
    return elem_new(n, 1, 1, Fraction(1, sigma), 0, 1)


def lower_unipotent(n: int, sigma: int) -> GammaStarElem:
    """(1, 0; N/sigma, 1), a boundary element of sigma-level exactly sigma."""
    return elem_new(n, 1, 1, 0, Fraction(1, sigma), 1)


def matrix_of(x: GammaStarElem) -> Matrix2:
    """The real matrix (a*sqrt(mu), b/sqrt(mu); c*(N/mu)*sqrt(mu), d*sqrt(mu))."""
    mu = x.mu
    return Matrix2(
        SqrtRat.make(x.a, mu),
        SqrtRat.make(x.b / mu, mu),  # b/sqrt(mu) = (b/mu)*sqrt(mu)
        SqrtRat.make(x.c * (x.n // mu), mu),
        SqrtRat.make(x.d, mu),
    )


def multiply(x: GammaStarElem, y: GammaStarElem) -> GammaStarElem:
    """Group law via the closed product formula on presentations."""
    if x.n != y.n:
        raise ValueError(f"level mismatch: {x.n} vs {y.n}")
    n = x.n
    mu, nu = x.mu, y.mu
    delta = gcd(mu, nu)
    kappa = mu * nu // (delta * delta)
    a, b, c, d = x.a, x.b, x.c, x.d
    e, f, g, h = y.a, y.b, y.c, y.d
    return elem_new(
        n,
        kappa,
        a * e * delta + b * g * Fraction(n, delta * kappa),
        a * f * Fraction(mu, delta) + b * h * Fraction(nu, delta),
        c * e * Fraction(nu, delta) + d * g * Fraction(mu, delta),
        c * f * Fraction(n, delta * kappa) + d * h * delta,
    )


def inverse(x: GammaStarElem) -> GammaStarElem:
    """Adjugate presentation (mu, d, -b, -c, a)."""
    return GammaStarElem(x.n, x.mu, x.d, -x.b, -x.c, x.a)


def _transferable_primes(n: int) -> list[int]:
    """Primes p | n with v_p(n) even: the full p-power can move between mu and N/mu."""
    from .numtheory import factorize

    return [p for p, e in factorize(n) if e % 2 == 0]


def transfer(x: GammaStarElem, p: int) -> GammaStarElem:
    """Move p**v_p(N) between mu and N/mu (only for even v_p(N)); same matrix."""
    e = 0
    n = x.n
    while n % p == 0:
        n //= p
        e += 1
    if e % 2 != 0 or e == 0:
        raise ValueError(f"prime {p} does not admit a transfer at level {x.n}")
    half = p ** (e // 2)
    if x.mu % p == 0:
        return GammaStarElem(
            x.n, x.mu // p**e, x.a * half, x.b / half, x.c / half, x.d * half
        )
    return GammaStarElem(x.n, x.mu * p**e, x.a / half, x.b * half, x.c * half, x.d / half)


def presentations(x: GammaStarElem) -> list[GammaStarElem]:
    """All presentations of x reachable by transfers at even-valuation primes."""
    out = [x]
    for p in _transferable_primes(x.n):
        out += [transfer(y, p) for y in out]
    return out


def _no_cancelation(x: GammaStarElem) -> bool:
    """True when no prime sits in the divisor attached to the other summand.

    Equivalent to the four products ab, ac, bd, cd reducing without any prime
    of N cancelling between a numerator and a denominator.
    """
    u, w = x.summands
    return gcd(x.mu, abs(w)) == 1 and gcd(x.n // x.mu, abs(u)) == 1


def normalize_presentation(x: GammaStarElem) -> GammaStarElem:
    """Canonical presentation: smallest mu among the cancelation-free ones."""
    good = [y for y in presentations(x) if _no_cancelation(y)]
    if not good:
        raise AssertionError(f"no cancelation-free presentation for {x}")
    return min(good, key=lambda y: y.mu)


def sigma_level(x: GammaStarElem) -> int:
    """Minimal sigma | s_N with x in Gamma0*^sigma(N): lcm of denominators of ab and cd."""
    d1 = (x.a * x.b).denominator
    d2 = (x.c * x.d).denominator
    return d1 * d2 // gcd(d1, d2)


def sigma_level_alt(x: GammaStarElem) -> int:
    """Same via the products ac and bd; equality is a theorem, asserted in tests."""
    d1 = (x.a * x.c).denominator
    d2 = (x.b * x.d).denominator
    return d1 * d2 // gcd(d1, d2)


def conjugate_int(x: GammaStarElem, g: Matrix2) -> Matrix2:
    """x * g * x^(-1) for an integer det-1 matrix g, by the closed conjugation formula."""
    e, f, gg, h = (Fraction(v) for v in g.int_entries())
    if e * h - f * gg != 1:
        raise DeterminantNotOne("conjugated matrix must have determinant 1")
    n, mu = x.n, x.mu
    a, b, c, d = x.a, x.b, x.c, x.d
    co = Fraction(n, mu)
    top_left = b * d * gg - a * c * f * n + a * d * e * mu - b * c * h * co
    top_right = a * a * f * mu - a * b * (e - h) - b * b * gg / mu
    bot_left = d * d * gg * mu + c * d * n * (e - h) - c * c * f * n * n / mu
    bot_right = a * c * f * n - b * d * gg + a * d * h * mu - b * c * e * co
    return Matrix2.from_rows([(top_left, top_right), (bot_left, bot_right)])


def from_matrix(n: int, m: Matrix2) -> GammaStarElem | None:
    """Decide membership of m in Gamma0*^{s_N}(N); canonical presentation or None."""
    try:
        det_ok = m.det() == SqrtRat.make(1)
    except SqrtRatError:
        det_ok = False
    if not det_ok:
        raise DeterminantNotOne("matrix must have determinant 1")
    for div in exact_divisors(n):
        mu = div.mu
        a = m.e.div_by_sqrt(mu)
        d = m.h.div_by_sqrt(mu)
        b = _mul_rational(m.f, mu)  # f*sqrt(mu) must be rational
        c = None
        g_over = m.g.div_by_sqrt(mu)
        if g_over is not None:
            c = g_over / (n // mu)
        if None in (a, b, c, d):
            continue
        try:
            return normalize_presentation(elem_new(n, mu, a, b, c, d))
        except (DenominatorTooLarge, DeterminantNotOne):
            continue
    return None


def _mul_rational(x: SqrtRat, mu: int) -> Fraction | None:
    """x * sqrt(mu) when rational, else None."""
    prod = x * SqrtRat.sqrt(mu)
    return prod.q if prod.is_rational else None


def intent_check(n: int, m: Matrix2) -> list[bool]:
    """The nine integrality flags necessary for conjugating Gamma1(N) into Gamma0(N):

    e^2, e*g, g^2/N, 2*N*e*f, N*(e*h + f*g), 2*g*h, N*f^2, N*f*h, h^2.
    """
    e, f, g, h = m.entries()
    exprs = [
        lambda: e * e,
        lambda: e * g,
        lambda: (g * g) / n,
        lambda: (e * f) * (2 * n),
        lambda: (e * h + f * g) * n,
        lambda: (g * h) * 2,
        lambda: (f * f) * n,
        lambda: (f * h) * n,
        lambda: h * h,
    ]
    flags = []
    for expr in exprs:
        try:
            flags.append(expr().is_integer)
        except SqrtRatError:
            # an unrepresentable sum of distinct radicals is irrational
            flags.append(False)
    return flags


def _vp(m: int, p: int) -> int:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def index_over_gamma0(n: int, sigma: int) -> int:
    """Index of Gamma0(N) in Gamma0*^sigma(N), as an exact integer."""
    from .numtheory import factorize, primes_of

    s_n = square_part(n).s
    if sigma < 1 or s_n % sigma != 0:
        raise ValueError(f"sigma = {sigma} does not divide s_N = {s_n}")
    num, den = sigma * sigma, 1
    nfac = dict(factorize(n))
    for p in primes_of(sigma):
        if nfac[p] == 2 * _vp(sigma, p):
            num *= p + 1
            den *= p
    num *= 2 ** len(primes_of(n // (sigma * sigma)))
    assert num % den == 0
    return num // den


def element_with_summands(n: int, mu: int, u: int, sigma: int) -> GammaStarElem:
    """An element of Gamma0*^sigma(N) with divisor mu and summands (u, u - 1).

    Requires u to be divisible by mu/gcd(s_mu, sigma)^2 and u - 1 by the
    complementary modulus; such elements realize exactly the residue classes
    of a*d*mu mod N that occur in Gamma0*^sigma(N).
    """
    if not is_exact_divisor(mu, n):
        raise NotExactDivisor(f"{mu} is not an exact divisor of {n}")
    g1 = gcd(square_part(mu).s, sigma)
    g2 = gcd(square_part(n // mu).s, sigma)
    m1 = mu // (g1 * g1)
    m2 = (n // mu) // (g2 * g2)
    if u % m1 != 0 or (u - 1) % m2 != 0:
        raise ValueError(f"summand {u} not realizable for mu={mu}, sigma={sigma}")
    return elem_new(
        n, mu, Fraction(u // m1, g1), Fraction((u - 1) // m2, g2), Fraction(1, g2), Fraction(1, g1)
    )
