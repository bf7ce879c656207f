"""Sorting with hereditary permutation classes."""

from .classes import class_handle, member, parse_class_spec
from .engine import optimal_steps, rin, st, wst
from .perm import Perm
from .sorters import SORTERS, SortCertificate, verify_certificate
from .taxonomy import Band, classify

__all__ = [
    "Band", "Perm", "SORTERS", "SortCertificate", "class_handle", "classify", "member", "optimal_steps",
    "parse_class_spec", "rin", "st", "verify_certificate", "wst",
]
__version__ = "0.1.0"
