"""congnorm: exact normalizers of congruence groups between Gamma1(N) and
Gamma0(N) inside SL2(R), the extended groups Gamma0*^sigma(N) containing them,
and automorphism groups of the signature (2, 1) lattices L(N, D)."""

from .gammastar import (
    DenominatorTooLarge,
    DeterminantNotOne,
    GammaStarElem,
    Matrix2,
    NotExactDivisor,
    SqrtRat,
    SqrtRatError,
    atkin_lehner,
    conjugate_int,
    elem_new,
    fricke,
    from_matrix,
    identity_elem,
    index_over_gamma0,
    intent_check,
    inverse,
    matrix_of,
    multiply,
    normalize_presentation,
    sigma_level,
)
from .lattice import (
    ConjFamilyLattice,
    LatticeND,
    acts_on_lattice,
    conj_family_lattice,
    disc_action,
    discriminant_kernel,
    dual_basis,
    gram,
    iso_invariants,
    saut_plus_sigma,
    stabilizer_tests,
)
from .normalizer import (
    CongFamily,
    FamilyNormalizer,
    NormalizerSpec,
    normalizer_of,
    normalizer_of_family,
    normalizes_element,
    sigma_kernel_closed_form,
    sigma_mixed,
    sigma_pm_kernel,
    sigma_prime_power,
    sigma_torsion_closed_form,
    torsion_local_data,
)
from .numtheory import (
    ExactDivisor,
    SquarePart,
    carmichael_lambda,
    euler_phi,
    exact_divisor_product,
    exact_divisor_project,
    exact_divisors,
    square_part,
    valuation,
)
from .oracle import (
    CosetTable,
    SchreierGenSet,
    enumerate_cosets,
    oracle_normalizes,
    oracle_sigma,
    schreier_generators,
)
from .subgroups import (
    GammaHMembership,
    ResidueSubgroup,
    all_subgroups,
    atkin_lehner_residue,
    full_subgroup,
    inverse_diff_gcd,
    is_atkin_lehner_stable,
    min_kernel_level,
    pm_extend,
    sigma_of_subgroup,
    subgroup_generated,
    subgroup_kernel,
    subgroup_square_kernel,
    subgroup_torsion,
    trivial_subgroup,
)

__version__ = "0.1.0"
