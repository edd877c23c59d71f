"""Shared test utilities: random walks through Gamma0*^{s_N}(N)."""

from congnorm.gammastar import (
    atkin_lehner,
    elem_new,
    identity_elem,
    lower_unipotent,
    multiply,
    upper_unipotent,
)
from congnorm.numtheory import divisors, exact_divisors, square_part


def random_elem(n, rng, steps=5):
    pool = [identity_elem(n), elem_new(n, 1, 1, 1, 0, 1), elem_new(n, 1, 1, 0, 1, 1)]
    pool += [atkin_lehner(n, d.mu) for d in exact_divisors(n)]
    for sig in divisors(square_part(n).s):
        pool.append(upper_unipotent(n, sig))
        pool.append(lower_unipotent(n, sig))
    x = identity_elem(n)
    for _ in range(steps):
        x = multiply(x, rng.choice(pool))
    return x
