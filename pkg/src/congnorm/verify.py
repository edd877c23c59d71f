"""Verification sweeps: every closed form against its definition-level value,
the analytic normalizer test against Schreier-conjugation, and the lattice
theorems against brute-force discriminant actions.

Each check returns a list of row dicts with an "ok" flag; the CLI and the
acceptance tests consume the same rows.
"""

from __future__ import annotations

from math import gcd

from .gammastar import (
    atkin_lehner,
    element_with_summands,
    from_matrix,
    index_over_gamma0,
    int_matrix,
    lower_unipotent,
    matrix_of,
    sigma_level,
    upper_unipotent,
)
from .lattice import (
    LatticeND,
    acts_on_lattice,
    conj_family_lattice,
    disc_action,
    discriminant_kernel,
    iso_invariants,
    saut_plus_sigma,
)
from .normalizer import (
    _crt_zero_one,
    normalizer_of,
    normalizes_element,
    sigma_kernel_closed_form,
    sigma_pm_kernel,
    sigma_prime_power,
    sigma_torsion_closed_form,
)
from .numtheory import (
    carmichael_lambda,
    divisors,
    exact_divisors,
    is_prime,
    primes_of,
    square_part,
)
from .oracle import gamma00_index, gamma_h_lift, oracle_normalizes
from .subgroups import (
    all_subgroups,
    full_subgroup,
    pm_extend,
    sigma_of_subgroup,
    subgroup_generated,
    subgroup_kernel,
    subgroup_torsion,
    trivial_subgroup,
    units,
)


def _row(case: str, expected, got) -> dict:
    return {"case": case, "expected": str(expected), "got": str(got), "ok": expected == got}


def check_kernel_closed_form(max_level: int = 120) -> list[dict]:
    """Closed form vs definition for every kernel subgroup, N <= max_level."""
    rows = []
    for n in range(1, max_level + 1):
        for d in divisors(n):
            got = sigma_of_subgroup(n, subgroup_kernel(n, d))
            rows.append(_row(f"kernel N={n} D={d}", sigma_kernel_closed_form(n, d), got))
    return rows


def check_classical_specializations(max_closed: int = 1000, max_def: int = 120) -> list[dict]:
    """sigma = 1 for Gamma1(N) and gcd(s_N, 24) for Gamma0(N)."""
    rows = []
    for n in range(1, max_closed + 1):
        g = gcd(square_part(n).s, 24)
        rows.append(_row(f"closed Gamma1({n})", 1, sigma_kernel_closed_form(n, n)))
        rows.append(_row(f"closed Gamma0({n})", g, sigma_kernel_closed_form(n, 1)))
    for n in range(1, max_def + 1):
        g = gcd(square_part(n).s, 24)
        rows.append(_row(f"def Gamma1({n})", 1, sigma_of_subgroup(n, trivial_subgroup(n))))
        rows.append(_row(f"def Gamma0({n})", g, sigma_of_subgroup(n, full_subgroup(n))))
    return rows


def check_torsion_closed_form(max_level: int = 300, extra=(68, 1467)) -> list[dict]:
    """Torsion closed form vs definition for all m | lambda(N)."""
    rows = []
    levels = list(range(1, max_level + 1)) + [x for x in extra if x > max_level]
    for n in levels:
        for m in divisors(carmichael_lambda(n)):
            got = sigma_of_subgroup(n, subgroup_torsion(n, m))
            rows.append(_row(f"torsion N={n} m={m}", sigma_torsion_closed_form(n, m), got))
    return rows


def check_prime_powers(max_level: int = 256) -> list[dict]:
    """Case dispatch vs definition, plus fullness, for all subgroups at l**u."""
    rows = []
    for l in range(2, max_level + 1):
        if not is_prime(l):
            continue
        u = 1
        while l**u <= max_level:
            n = l**u
            for h in all_subgroups(n):
                spec = normalizer_of(n, h)
                rows.append(
                    _row(f"primepow N={n} |H|={len(h)}", sigma_prime_power(l, u, h), spec.sigma)
                )
                rows.append(_row(f"primepow-full N={n} |H|={len(h)}", True, spec.is_full_group))
            u += 1
    return rows


def check_level91() -> list[dict]:
    """The level 91 counterexample: mu = 7 Atkin-Lehner fails for H = <80>."""
    n = 91
    h = subgroup_generated(n, [80])
    rows = [_row("91 |<80>|", 12, len(h))]
    w7 = atkin_lehner(n, 7)
    rows.append(_row("91 mu=7 rejected", False, normalizes_element(w7, h)))
    for e in (1, 4, 9, 80):
        lift = gamma_h_lift(n, e)
        elem = from_matrix(n, int_matrix(*lift))
        rows.append(_row(f"91 Gamma0 sample diag={e}", True, normalizes_element(elem, h)))
    spec = normalizer_of(n, h)
    rows.append(_row("91 proper subset", (1, False), (spec.sigma, spec.is_full_group)))
    return rows


def _probe_elements(n: int, sigma_h: int):
    """Per exact divisor: a member of Gamma0*^{sigma_H}(N) plus, when one
    exists, an element of strictly larger sigma-level; sigma-levels sweep all
    divisors of s_N."""
    s_n = square_part(n).s
    probes = [upper_unipotent(n, sigma_h), lower_unipotent(n, sigma_h)]
    for div in exact_divisors(n):
        mu = div.mu
        probes.append(atkin_lehner(n, mu))
        for sig in divisors(s_n):
            g1 = gcd(square_part(mu).s, sig)
            g2 = gcd(square_part(n // mu).s, sig)
            u0 = _crt_zero_one(mu // (g1 * g1), (n // mu) // (g2 * g2))
            probes.append(element_with_summands(n, mu, u0, sig))
    return probes


def check_oracle_agreement(levels=range(2, 13), bound: int = 30) -> list[dict]:
    """normalizes_element against Schreier-conjugation on members and
    non-members, every subgroup of every level."""
    rows = []
    for n in levels:
        for h in all_subgroups(n):
            sig = sigma_of_subgroup(n, h)
            for a in _probe_elements(n, sig):
                analytic = normalizes_element(a, h)
                grouped = oracle_normalizes(a, h, bound)
                rows.append(
                    _row(f"oracle N={n} |H|={len(h)} elem={a}", analytic, grouped)
                )
    return rows


def check_pm_groups(max_level: int = 120) -> list[dict]:
    """Plus-minus extended kernels, including the (4, 4) exception and the
    index-3 statement at level 4."""
    rows = []
    for n in range(1, max_level + 1):
        for d in divisors(n):
            got = sigma_of_subgroup(n, pm_extend(subgroup_kernel(n, d)))
            rows.append(_row(f"pm N={n} D={d}", sigma_pm_kernel(n, d), got))
    rows.append(
        _row("index [G*2(4):G*(4)]", 3, index_over_gamma0(4, 2) // index_over_gamma0(4, 1))
    )
    return rows


def check_index_formula(max_level: int = 24, bound: int = 30) -> list[dict]:
    """Coset-enumeration cross-check of the sigma-dependent index factor."""
    rows = []
    for n in range(1, max_level + 1):
        s_n = square_part(n).s
        for sig in divisors(s_n):
            lhs_num = gamma00_index(n // sig, sig, bound)
            lhs_den = gamma00_index(n // (sig * sig), 1, bound)
            assert lhs_num % lhs_den == 0
            rhs = index_over_gamma0(n, sig) // (2 ** len(primes_of(n // (sig * sig))))
            rows.append(_row(f"index N={n} sigma={sig}", rhs, lhs_num // lhs_den))
    return rows


def _lattice_probes(n: int):
    s_n = square_part(n).s
    out = []
    for sig in divisors(s_n):
        out.append(upper_unipotent(n, sig))
        out.append(lower_unipotent(n, sig))
        for div in exact_divisors(n):
            mu = div.mu
            g1 = gcd(square_part(mu).s, sig)
            g2 = gcd(square_part(n // mu).s, sig)
            u0 = _crt_zero_one(mu // (g1 * g1), (n // mu) // (g2 * g2))
            out.append(element_with_summands(n, mu, u0, sig))
    return out


def check_lattices(max_level: int = 60, iso_max: int = 40) -> list[dict]:
    """Boundary of the lattice action, discriminant kernels against brute
    force, the two classical kernels, and isomorphism-invariant injectivity."""
    rows = []
    for n in range(1, max_level + 1):
        probes = _lattice_probes(n)
        for d in divisors(n):
            lat = LatticeND(n, d)
            sig = saut_plus_sigma(lat)
            for a in probes:
                expected = sig % sigma_level(a) == 0
                rows.append(
                    _row(f"acts N={n} D={d} elem={a}", expected, acts_on_lattice(a, lat))
                )
            kern = discriminant_kernel(lat)
            brute = []
            for e in units(n):
                elem = from_matrix(n, int_matrix(*gamma_h_lift(n, e)))
                if disc_action(elem, lat).is_identity:
                    brute.append(e)
            rows.append(_row(f"kernel N={n} D={d}", tuple(kern.h.elements), tuple(brute)))
            for div in exact_divisors(n):
                if div.mu == 1 or n == 1:
                    continue
                act = disc_action(atkin_lehner(n, div.mu), lat)
                rows.append(_row(f"AL-nontrivial N={n} D={d} mu={div.mu}", False, act.is_identity))
        rows.append(
            _row(
                f"classic kernels N={n}",
                (tuple(full_subgroup(n).elements), tuple(subgroup_torsion(n, gcd(2, carmichael_lambda(n))).elements)),
                (
                    tuple(discriminant_kernel(LatticeND(n, 1)).h.elements),
                    tuple(discriminant_kernel(LatticeND(n, n)).h.elements),
                ),
            )
        )
    inv = {}
    collisions = []
    for n in range(1, iso_max + 1):
        for d in divisors(n):
            key = iso_invariants(LatticeND(n, d))
            if key in inv:
                collisions.append((inv[key], (n, d)))
            inv[key] = (n, d)
    rows.append(_row(f"iso injective N<={iso_max}", [], collisions))
    return rows


def check_families(m_max: int = 12) -> list[dict]:
    """Conjugated families against direct conjugation, and the principal
    congruence case: SAut+ = SL2(Z) with the diagonal kernel refinement."""
    from .normalizer import normalizer_of_family

    rows = []
    samples = [(6, 2, 4), (2, 6, 4), (4, 3, 6), (3, 4, 2), (12, 1, 4), (1, 12, 12), (2, 2, 2)]
    for t, m, d in samples:
        n = m * t
        fam = normalizer_of_family(t, m, d)
        rows.append(_row(f"family sigma ({t},{m},{d})", sigma_kernel_closed_form(n, d), fam.sigma))
        p = fam.conjugator
        for a in _lattice_probes(n):
            conj = p * matrix_of(a) * p.inverse()
            expected = fam.sigma % sigma_level(a) == 0
            rows.append(_row(f"family conj ({t},{m},{d}) elem={a}", expected, fam.contains(conj)))
        for e in units(n):
            lift = gamma_h_lift(n, e)
            conj = p * int_matrix(*lift) * p.inverse()
            expected = n == 1 or e % d == 1 % d
            rows.append(
                _row(f"family member ({t},{m},{d}) diag={e}", expected, fam.family.contains(conj))
            )
    sl2_samples = [
        (1, 0, 0, 1), (0, -1, 1, 0), (1, 1, 0, 1), (2, 1, 1, 1), (5, 2, 2, 1),
        (7, 3, 9, 4), (1, 0, 1, 1), (3, -2, -1, 1), (11, 4, 8, 3),
    ]
    for m in range(1, m_max + 1):
        fam_lat = conj_family_lattice(m, m, m)
        fam_norm = normalizer_of_family(m, m, m)
        rows.append(_row(f"Gamma({m}) sigma", m, fam_norm.sigma))
        for g in sl2_samples:
            gm = int_matrix(*g)
            rows.append(_row(f"Gamma({m}) SAut g={g}", True, fam_lat.saut_contains(gm)))
            rows.append(_row(f"Gamma({m}) norm g={g}", True, fam_norm.contains(gm)))
        # kernel: diagonal mod M with diagonal squares 1 mod D, brute-checked
        exponent_two = all((a * a) % m == 1 % m for a in units(m))
        for a in units(m) if m > 1 else [1]:
            d_inv = pow(a, -1, m * m) if m > 1 else 1
            k = (a * d_inv - 1) // (m * m)
            gam = (a, m * k, m, d_inv)
            assert gam[0] * gam[3] - gam[1] * gam[2] == 1
            in_kernel = fam_lat.kernel_contains([(gam[0], gam[1]), (gam[2], gam[3])])
            expected = (a * a) % m == 1 % m
            rows.append(_row(f"Gamma({m}) kernel diag={a}", expected, in_kernel))
            # brute force via the discriminant action at level M*M
            back = from_matrix(m * m, fam_lat.conjugator.inverse() * int_matrix(*gam) * fam_lat.conjugator)
            trivial = disc_action(back, fam_lat.base).is_identity
            rows.append(_row(f"Gamma({m}) kernel-brute diag={a}", expected, trivial))
            if exponent_two:
                rows.append(_row(f"Gamma({m}) diag-desc exact diag={a}", True, in_kernel))
        # Gamma(M) itself always sits inside the kernel
        gam_m = (1 + m, -m, m, 1 - m) if m > 1 else (1, 0, 0, 1)
        if gam_m[0] * gam_m[3] - gam_m[1] * gam_m[2] == 1:
            rows.append(
                _row(f"Gamma({m}) inside kernel", True, fam_lat.kernel_contains([(gam_m[0], gam_m[1]), (gam_m[2], gam_m[3])]))
            )
        # non-diagonal reductions stay outside
        if m > 1:
            rows.append(_row(f"Gamma({m}) T outside kernel", False, fam_lat.kernel_contains([(1, 1), (0, 1)])))
    return rows


SUITES = {
    "closed-forms": lambda max_level, bound: (
        check_kernel_closed_form(min(max_level, 120))
        + check_classical_specializations(max_level, min(max_level, 120))
        + check_torsion_closed_form(min(max_level, 300), extra=())
        + check_pm_groups(min(max_level, 120))
    ),
    "oracle": lambda max_level, bound: (
        check_oracle_agreement(range(2, min(max_level, 12) + 1), bound)
        + check_index_formula(min(max_level, 24), bound)
    ),
    "lattice": lambda max_level, bound: (
        check_lattices(min(max_level, 60), min(max_level, 40)) + check_families(12)
    ),
}


def run_suite(suite: str, max_level: int, bound: int = 30) -> list[dict]:
    if suite == "all":
        rows = []
        for name in SUITES:
            rows += SUITES[name](max_level, bound)
        return rows
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[suite](max_level, bound)
