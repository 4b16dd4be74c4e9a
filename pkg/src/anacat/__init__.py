"""Verification engine for category theory internal to finite ambient
categories: sites with pretopologies, internal categories and anafunctors,
and executable law suites for the localisation calculus."""

from .ambient import (
    FINSET,
    AmbientError,
    Arrow,
    CompositionError,
    ConeError,
    DescentError,
    FinSetObj,
    compose,
    identity,
)
from .ana import (
    AnaTransformation,
    Anafunctor,
    ana_transformations_between,
    associator,
    compose_ana,
    from_functor,
    from_transformation,
    hcomp_trans,
    identity_ana,
    identity_transformation,
    invert_ana_transformation,
    is_iso_ana_transformation,
    is_isomorphic_to_functor,
    pseudoinverse,
    refinement_functor,
    rename_cover,
    renaming_transformation,
    validate_ana_transformation,
    validate_anafunctor,
    vcomp_trans,
    whisker_left,
    whisker_right,
)
from .instances import (
    FINGRP,
    CrossedModule,
    FinGrpAmbient,
    FinGSetAmbient,
    FiniteGroup,
    action_groupoid,
    cyclic_group,
    dihedral_group,
    epi_pretopology_grp,
    groupoid_to_xmod,
    one_object_groupoid,
    quaternion_group,
    symmetric_group,
    validate_crossed_module,
    validate_group,
    xmod_to_groupoid,
)
from .internal import (
    InternalCategory,
    InternalFunctor,
    NaturalTransformation,
    base_change,
    base_change_projection,
    cech_groupoid,
    codisc,
    compose_functors,
    disc,
    find_local_splitting,
    functors_between,
    identity_functor,
    is_essential_equivalence,
    is_fully_faithful,
    is_weak_equivalence,
    strict_pullback,
    transformations_between,
    validate_category,
    validate_functor,
    validate_groupoid,
    validate_transformation,
)
from .laws import LAW_REGISTRY, SUITE_NAMES, corpus_generate, run_laws
from .report import CheckRow, VerificationReport
from .sites import (
    Pretopology,
    check_extensivity,
    check_pretopology_axioms,
    coproduct_pretopology,
    is_cofinal,
    is_saturated,
    is_subcanonical,
    jointly_surjective_families,
    split_pretopology,
    surjective_pretopology,
    trivial_pretopology,
    wisc_witness,
)

__version__ = "0.1.0"
