"""Binary matroids over GF(2): connectivity, configurations, moves and minors."""

from .connectivity import (ConnectivityClass, Fan, Separation, Tier, classify, find_fans,
                           find_k_separations, is_3_connected, is_44s_connected,
                           is_internally_4_connected, is_sequential, lam)
from .errors import CapExceeded, MatroidError, ParseError
from .gf2 import Gf2Matrix
from .io import parse_bmat, read_bmat, write_bmat, format_bmat
from .iso import canonical_form, find_isomorphism, has_minor, is_isomorphic
from .matroid import BinaryMatroid

__all__ = [
    "BinaryMatroid", "CapExceeded", "ConnectivityClass", "Fan", "Gf2Matrix", "MatroidError",
    "ParseError", "Separation", "Tier", "canonical_form", "classify", "find_fans",
    "find_isomorphism", "find_k_separations", "format_bmat", "has_minor", "is_3_connected",
    "is_44s_connected", "is_internally_4_connected", "is_isomorphic", "is_sequential", "lam",
    "parse_bmat", "read_bmat", "write_bmat",
]
