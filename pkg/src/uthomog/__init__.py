"""Homogeneous antiautomorphisms and involutions of graded upper triangular matrix algebras."""
from .classify import ClassificationRecord, ClassificationSummary, classify_space, cross_validate, enumerate_tuples
from .fields import FieldSpec, parse_field_spec
from .grading import ElementaryGrading, SupportMap, component_product_nonzero, support_closed_form
from .group import (
    CayleyTableGroup,
    CyclicGroup,
    DirectProduct,
    Group,
    GroupError,
    InfiniteCyclicGroup,
    parse_group_spec,
    parse_tuple,
    segment_product,
)
from .homogeneity import (
    ConditionWitness,
    ThetaMap,
    build_theta,
    check_segment_condition,
    classify_theta,
    theta_properties_check,
)
from .matrixalg import (
    LinearMapOnUnits,
    UTMatrix,
    antiauto_apply,
    block_inverse,
    canonical_involution,
    conjugate,
    involution_sign,
    is_antiautomorphism,
    is_homogeneous_matrix,
    oracle_homogeneity,
)

__version__ = "0.1.0"
