"""Sharply transitive subsets of PGL_2(K) over finite fields."""

from . import classify, gf, projline, regular, search
from .classify import SubgroupType, subgroup_type
from .gf import FieldElem, FieldSpec, field_make, field_of_order
from .projline import GroupElem, ProjPoint
from .regular import ClosureTrace, RegularSet, is_sharply_transitive
from .search import SearchConfig, TheoremReport

__all__ = [
    "classify", "gf", "projline", "regular", "search",
    "FieldElem", "FieldSpec", "field_make", "field_of_order",
    "GroupElem", "ProjPoint",
    "RegularSet", "ClosureTrace", "is_sharply_transitive",
    "SubgroupType", "subgroup_type",
    "SearchConfig", "TheoremReport",
]
