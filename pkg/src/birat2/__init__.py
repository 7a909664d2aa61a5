"""birat2: deciding 2-rationality and 2-birationality of multiquadratic
number fields, with independent class-group and ray-class oracles and a
planner for infinite towers of quadratic extensions."""

from .arith import (
    OddPrime,
    SquarefreeInt,
    factorize,
    field_discriminant,
    is_prime,
    jacobi,
    kronecker,
    multiplicative_order,
    primes_up_to,
    squarefree_decompose,
)
from .classify import (
    Evidence,
    Verdict,
    check_propagation,
    is_2birational_multiquadratic,
    is_2birational_quadratic,
    is_2rational_multiquadratic,
)
from .errors import EffortBoundExceeded, TheoremViolation
from .fields import (
    FieldSignature,
    MultiquadField,
    adjoin_sqrt2,
    imaginary_labels,
    make_field,
    quadratic_subfields,
    real_part,
)
from .quadforms import (
    ClassGroup,
    FundamentalUnit,
    QuadForm,
    fundamental_unit,
    genus_2rank,
    is_fundamental_discriminant,
    narrow_class_group,
    restricted_2class_quotient,
    verify_2birational_quadratic_oracle,
    verify_2rational_quadratic,
)
from .rayclass import (
    AbelianGroupStructure,
    RayClassReport,
    UnitGroupMod,
    find_propagation_field,
    mirror_group_trivial,
    ray_quotient_report,
    reflection_ranks,
    units_mod,
)
from .tower import (
    RealizedStep,
    StepCertificate,
    TowerPlan,
    plan_and_realize,
    plan_tower,
    realize_step1,
)
from .towerdec import (
    PrimePlace,
    PrimitivityClass,
    TowerProfile,
    decomposition_profile,
    place_primitivity_in_quadratic,
    prime_place,
    primitivity_over_Q,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupStructure",
    "ClassGroup",
    "EffortBoundExceeded",
    "Evidence",
    "FieldSignature",
    "FundamentalUnit",
    "MultiquadField",
    "OddPrime",
    "PrimePlace",
    "PrimitivityClass",
    "QuadForm",
    "RayClassReport",
    "RealizedStep",
    "SquarefreeInt",
    "StepCertificate",
    "TheoremViolation",
    "TowerPlan",
    "TowerProfile",
    "UnitGroupMod",
    "Verdict",
    "adjoin_sqrt2",
    "check_propagation",
    "decomposition_profile",
    "factorize",
    "field_discriminant",
    "find_propagation_field",
    "fundamental_unit",
    "genus_2rank",
    "imaginary_labels",
    "is_2birational_multiquadratic",
    "is_2birational_quadratic",
    "is_2rational_multiquadratic",
    "is_fundamental_discriminant",
    "is_prime",
    "jacobi",
    "kronecker",
    "make_field",
    "mirror_group_trivial",
    "multiplicative_order",
    "narrow_class_group",
    "place_primitivity_in_quadratic",
    "plan_and_realize",
    "plan_tower",
    "prime_place",
    "primes_up_to",
    "primitivity_over_Q",
    "quadratic_subfields",
    "ray_quotient_report",
    "real_part",
    "realize_step1",
    "reflection_ranks",
    "restricted_2class_quotient",
    "squarefree_decompose",
    "units_mod",
    "verify_2birational_quadratic_oracle",
    "verify_2rational_quadratic",
]
