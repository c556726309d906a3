from .base import Semiring, SemiringValue, add, mul
from .ideals import Ideal, IdealQuantale, canonicalize_ideal, format_ideal, hnf, parse_ideal, principal
from .instances import (
    BUILTIN_NAMES,
    BooleanSemiring,
    NonnegRationalSemiring,
    RationalSemiring,
    TableSemiring,
    TropicalSemiring,
    all_builtin,
    get_semiring,
)
from .lattice import (
    FiniteLattice,
    LatticeSemiring,
    boolean_algebra,
    chain,
    diamond_m3,
    divisor_lattice,
    pentagon_n5,
    validate_lattice,
)
from .properties import (
    audit_meta_implication,
    check_causality_criterion,
    check_entire,
    check_semiring_axioms,
    check_zerosumfree,
    find_complement,
)
