"""Exact twisted calculus: Ore operators, twisted derivations and semilinear modules."""

__version__ = "0.1.0"

from .scalars import (  # noqa: E402
    UNKNOWN,
    FieldSpec,
    ParamFunctionField,
    PrimeField,
    RationalField,
    Scalar,
    q_characteristic,
    quantum_integer,
)
from .twistalg import (  # noqa: E402
    CoeffAlgebra,
    CoeffElem,
    Twist,
    TwistSpec,
    apply_derivation,
    apply_endo,
    coeff_arith,
    constants_basis,
    derivation_power_formula_check,
    invariants_basis,
    is_strong,
    schwarz_check,
)
from .oreweyl import (  # noqa: E402
    OreAlgebra,
    OreOperator,
    centralizer_basis,
    commutator,
    graded_to_weyl,
    ore_apply,
    ore_mul,
    sigma_as_operator,
    weyl_to_graded,
)
from .semilinmod import (  # noqa: E402
    DiffModule,
    KernelReport,
    SigmaModule,
    check_integrability,
    check_sigma_compat,
    diff_to_sigma,
    horizontal_sections,
    module_apply,
    sigma_cohomology,
    sigma_to_diff,
)
from .config import RingConfig, parse_config  # noqa: E402
