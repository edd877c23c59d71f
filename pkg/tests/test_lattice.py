"""Lattices L(N, D): Gram data, the conjugation action, discriminant groups."""

import random
from fractions import Fraction as F
from math import gcd

import pytest

from congnorm.gammastar import (
    SqrtRat,
    SqrtRatError,
    elem_new,
    fricke,
    from_matrix,
    identity_elem,
    int_matrix,
    matrix_of,
    multiply,
    sigma_level,
)
from congnorm.lattice import (
    LatticeND,
    acts_on_lattice,
    conj_family_lattice,
    disc_action,
    disc_action_by_conjugation,
    discriminant_kernel,
    dual_basis,
    gram,
    gram_det,
    iso_invariants,
    pairing,
    saut_plus_sigma,
    stabilizer_tests,
)
from congnorm.numtheory import divisors
from congnorm.oracle import gamma_h_lift
from congnorm.subgroups import full_subgroup, subgroup_square_kernel
from helpers import random_elem


def test_gram_examples():
    assert gram(LatticeND(5, 1)) == [[0, 1, 0], [1, 0, 0], [0, 0, 10]]
    assert gram(LatticeND(4, 2)) == [[0, 2, 0], [2, 0, 0], [0, 0, 4]]
    assert gram(LatticeND(12, 4)) == [[0, 4, 0], [4, 0, 0], [0, 0, 6]]


def test_gram_even_and_determinant():
    for n in range(1, 41):
        for d in divisors(n):
            lat = LatticeND(n, d)
            g = gram(lat)
            for i in range(3):
                assert g[i][i] % 2 == 0
            assert gram_det(lat) == -2 * n * d
            orders = lat.disc_orders
            assert orders[0] * orders[1] * orders[2] == 2 * n * d


def test_dual_basis_pairs_to_identity():
    lat = LatticeND(12, 3)
    duals = dual_basis(lat)
    for i, dv in enumerate(duals):
        for j, bv in enumerate(lat.basis):
            expected = SqrtRat.make(1 if i == j else 0)
            assert pairing(dv, bv) == expected


def test_acts_on_lattice_examples():
    x = elem_new(4, 1, 1, F(1, 2), F(1, 2), 2)
    assert acts_on_lattice(x, LatticeND(4, 4))
    assert not acts_on_lattice(x, LatticeND(4, 1))
    g = from_matrix(4, int_matrix(1, 1, 0, 1))
    for d in (1, 2, 4):
        assert acts_on_lattice(g, LatticeND(4, d))
    with pytest.raises(ValueError):
        acts_on_lattice(x, LatticeND(8, 1))


def _acts_by_basis_coordinates(x, lat):
    # independent route: conjugate each basis vector and solve its coordinates
    # in the basis; the action preserves the lattice iff all nine are integers
    mat = matrix_of(x)
    b1, b2, b3 = lat.basis
    k1, k2, k3 = b1.f, b2.g, b3.e  # the scalar in front of E, F, H
    for v in lat.basis:
        img = mat.conjugate(v)
        for coeff, unit in ((img.f, k1), (img.g, k2), (img.e, k3)):
            try:
                val = (coeff / unit).as_fraction()
            except SqrtRatError:
                return False
            if val.denominator != 1:
                return False
    return True


def test_acts_on_lattice_matches_coordinate_route():
    rng = random.Random(41)
    for n in (4, 8, 9, 12, 16, 18, 36):
        for d in divisors(n):
            lat = LatticeND(n, d)
            for _ in range(10):
                x = random_elem(n, rng)
                assert acts_on_lattice(x, lat) == _acts_by_basis_coordinates(x, lat)


def test_saut_sigma_examples():
    for n in (3, 7, 12, 45):
        assert saut_plus_sigma(LatticeND(n, 1)) == 1
    for n in (4, 12, 16, 36):
        assert saut_plus_sigma(LatticeND(n, n)) == 2
    for n in (2, 6, 10, 18):
        assert saut_plus_sigma(LatticeND(n, n)) == 1


def test_action_preserves_form():
    rng = random.Random(13)
    for n in (4, 9, 12, 16):
        for d in divisors(n):
            lat = LatticeND(n, d)
            for _ in range(8):
                x = random_elem(n, rng)
                mat = matrix_of(x)
                for v in lat.basis:
                    img = mat.conjugate(v)
                    assert pairing(img, img) == pairing(v, v)


def test_disc_action_examples():
    lat = LatticeND(12, 4)
    ident = disc_action(identity_elem(12), lat)
    assert ident.is_identity
    # a Gamma0 element scales the E and F generators by a^2 and d^2 mod D
    e = 5
    elem = from_matrix(12, int_matrix(*gamma_h_lift(12, e)))
    act = disc_action(elem, lat)
    d_res = pow(e, -1, 12)
    assert act.matrix[0][0] == (e * e) % 4
    assert act.matrix[1][1] == (d_res * d_res) % 4
    assert act.matrix[2][2] == 1 % 6
    # Fricke scales the H generator by -1 mod 2N/D
    for d in (1, 2, 4, 12):
        latd = LatticeND(12, d)
        act = disc_action(fricke(12), latd)
        assert act.matrix[2][2] == (-1) % (2 * 12 // d)


def test_disc_action_requires_integral_products():
    x = elem_new(4, 1, 1, F(1, 2), F(1, 2), 2)
    with pytest.raises(ValueError):
        disc_action(x, LatticeND(4, 4))


def test_disc_action_matches_conjugation_route():
    rng = random.Random(29)
    for n in (4, 6, 9, 12, 16, 24):
        for d in divisors(n):
            lat = LatticeND(n, d)
            for _ in range(8):
                x = random_elem(n, rng)
                if sigma_level(x) != 1:
                    continue
                assert disc_action(x, lat) == disc_action_by_conjugation(x, lat)


def test_disc_action_homomorphism():
    rng = random.Random(37)
    for n in (8, 12, 18):
        for d in divisors(n):
            lat = LatticeND(n, d)
            for _ in range(10):
                x, y = random_elem(n, rng), random_elem(n, rng)
                if sigma_level(x) != 1 or sigma_level(y) != 1:
                    continue
                lhs = disc_action(multiply(x, y), lat)
                assert lhs == disc_action(x, lat).compose(disc_action(y, lat))


def test_discriminant_kernel_examples():
    assert discriminant_kernel(LatticeND(10, 1)).h == full_subgroup(10)
    assert discriminant_kernel(LatticeND(12, 12)).h.elements == (1, 5, 7, 11)
    assert discriminant_kernel(LatticeND(12, 4)).h.elements == (1, 5, 7, 11)
    assert discriminant_kernel(LatticeND(25, 25)).h == subgroup_square_kernel(25, 25)


def test_stabilizer_tests():
    lat = LatticeND(12, 4)
    g = from_matrix(12, int_matrix(*gamma_h_lift(12, 5)))
    assert stabilizer_tests(g, lat) == (True, True, True)
    # Fricke has mu = 12 sharing factors with both D and N/D
    assert stabilizer_tests(fricke(12), lat) == (True, False, False)
    x = elem_new(4, 1, 1, F(1, 2), F(1, 2), 2)
    assert stabilizer_tests(x, LatticeND(4, 4))[0] is False


def test_conj_family_lattice_gram_and_rescale():
    # (T, M, D) = (N, 1, D) is L(N, D) itself
    fam = conj_family_lattice(12, 1, 4)
    assert fam.gram() == gram(LatticeND(12, 4))
    # rational rescaling by u/v matches the family (u*N/v^2, u, u*D/v), M | T
    for n, d in ((12, 6), (16, 4), (36, 6)):
        for v in divisors(gcd(d, n // d)):
            for u in (1, 2, 3):
                fam = conj_family_lattice(u * n // (v * v), u, u * d // v)
                assert fam.t % fam.m == 0
                scaled = [
                    [_scale_entry(x, F(u, v)) for x in row] for row in gram(LatticeND(n, d))
                ]
                assert fam.gram() == scaled


def _scale_entry(x, r):
    val = x * r
    assert val.denominator == 1
    return int(val)


def test_iso_invariants():
    assert iso_invariants(LatticeND(4, 2))[0] == 2
    assert iso_invariants(LatticeND(2, 1)) != iso_invariants(LatticeND(4, 1))
    seen = {}
    for n in range(1, 41):
        for d in divisors(n):
            key = iso_invariants(LatticeND(n, d))
            assert key not in seen, f"collision {seen[key]} vs {(n, d)}"
            seen[key] = (n, d)
