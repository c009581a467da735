"""p-adic tools: splitting types, Eisenstein generators, local fields of degree 5, masses."""

from .eisenstein import eisenstein_generator, eisenstein_generator_at_5, star_condition
from .etale import (
    EtaleClass,
    LocalComponent,
    LocalConditionSet,
    etale_quintic_classes,
    local_density_factor,
    mass_subset,
    total_mass,
)
from .extension import find_roots_in_extension, is_eisenstein, same_field
from .newton import NewtonPolygon, Segment, newton_polygon
from .splitting import (
    INERT,
    TOTALLY_RAMIFIED,
    SplittingType,
    dedekind_is_maximal_at,
    is_inert,
    is_totally_ramified,
    splitting_type,
)
from .wild import LocalFieldClass, enumerate_wild_quintic_q5, wild_classes

__all__ = [
    "INERT",
    "TOTALLY_RAMIFIED",
    "EtaleClass",
    "LocalComponent",
    "LocalConditionSet",
    "LocalFieldClass",
    "NewtonPolygon",
    "Segment",
    "SplittingType",
    "dedekind_is_maximal_at",
    "eisenstein_generator",
    "eisenstein_generator_at_5",
    "enumerate_wild_quintic_q5",
    "etale_quintic_classes",
    "find_roots_in_extension",
    "is_eisenstein",
    "is_inert",
    "is_totally_ramified",
    "local_density_factor",
    "mass_subset",
    "newton_polygon",
    "same_field",
    "splitting_type",
    "star_condition",
    "total_mass",
    "wild_classes",
]
