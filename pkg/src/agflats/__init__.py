"""Exact computations with flats of the finite affine space AG(n, F_q)."""

from .affine import Flat, flat_incident, flat_intersection, flat_join, flat_new, enumerate_flats
from .counting import count_type_subspaces, f3_size, gauss, hm_size
from .families import (
    FlatFamily,
    covering_number,
    f3_family,
    hm_family,
    is_intersecting,
    maximal_closure,
    pencil_family,
)
from .fieldlinalg import FieldSpec, Subspace, enumerate_subspaces, rref

__version__ = "0.1.0"
