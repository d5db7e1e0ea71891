"""Book links in the standard open book of the 3-sphere.

Word calculus (``words``, ``moves``), closure diagrams and polynomial
invariants (``diagram``, ``laurent``), book index spectrum bounds
(``spectrum``) and foliation tile complexes (``tiles``).
"""

from .diagram import jones, jones_with_axis, kauffman_bracket, linking_with_axis, to_diagram
from .laurent import LaurentPoly
from .moves import Move, MoveKind, apply_move, canonical_form, enumerate_moves, equivalent_bounded
from .spectrum import check_monotone, spectrum_upper_bounds
from .tiles import TileComplex, check_complex, normalize_annulus
from .words import (
    BookLinkWord,
    Event,
    bridge_index,
    components,
    format_word,
    geometric_braid_index,
    parse_word,
    strand_profile,
    validate,
    word,
)

__all__ = [
    "BookLinkWord", "Event", "LaurentPoly", "Move", "MoveKind", "TileComplex",
    "apply_move", "bridge_index", "canonical_form", "check_complex", "check_monotone",
    "components", "enumerate_moves", "equivalent_bounded", "format_word",
    "geometric_braid_index", "jones", "jones_with_axis", "kauffman_bracket",
    "linking_with_axis", "normalize_annulus", "parse_word", "spectrum_upper_bounds",
    "strand_profile", "to_diagram", "validate", "word",
]
__version__ = "0.1.0"
