"""Virtual strings: combinatorial invariants, homotopy search and skein algebra."""

from .strings import (
    ArrowDiagram,
    CanonicalCode,
    OpenString,
    ParseError,
    VirtualString,
    arcs_dot,
    cable,
    closure,
    covering,
    family_perm,
    family_pq,
    inverse,
    linking,
    n_index,
    open_inverse,
    open_product,
    opposite,
    parse,
    parse_diagram,
    parse_open,
    product,
    random_diagram,
    random_open_string,
    random_string,
    serialize,
    trivial,
)
from .polynomial import BiPoly, IntPoly

__version__ = "0.1.0"

__all__ = [
    "ArrowDiagram",
    "BiPoly",
    "CanonicalCode",
    "IntPoly",
    "OpenString",
    "ParseError",
    "VirtualString",
    "arcs_dot",
    "cable",
    "closure",
    "covering",
    "family_perm",
    "family_pq",
    "inverse",
    "linking",
    "n_index",
    "open_inverse",
    "open_product",
    "opposite",
    "parse",
    "parse_diagram",
    "parse_open",
    "product",
    "random_diagram",
    "random_open_string",
    "random_string",
    "serialize",
    "trivial",
]
