"""Binary quadratic forms of discriminant -4n and the equation pq = x^2 + ny^2."""

from .classgroup import (
    FormClassGroup,
    GenusPartition,
    class_group,
    compose,
    genus_partition,
    is_convenient,
    principal_form,
)
from .errors import (
    ConsistencyError,
    DiscriminantDivisorError,
    DividesNError,
    EvenPrimeError,
    HypothesisError,
    NotDistinctError,
    NotPrimeError,
)
from .forms import (
    QuadForm,
    Representation,
    UnimodularMap,
    discriminant,
    enumerate_reduced,
    is_reduced,
    reduce,
    represent,
    represented_residues,
)
from .numtheory import (
    F14,
    F14_DISCRIMINANT,
    IntPolynomial,
    is_prime,
    jacobi,
    poly_roots_mod_p,
    sqrt_mod_p,
)
from .represent import (
    PairDecision,
    PrimeClassification,
    brute_force_pq,
    classify_pair_table,
    classify_prime,
    decide_pq,
    lagrange_compose,
    mutual_exclusion_check,
    principal_criterion,
    sweep_theorem,
)

__version__ = "0.1.0"
