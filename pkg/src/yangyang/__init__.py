"""Wall-crossing R-matrices, braid-closure invariants and Yang-Yang critical points."""

from .ring import QFrac, QLaurent, parse, q, serialize
from .liedata import LieType, WeightIndex, weight_table
from .monodromy import RMatrix, build_monodromy, build_pairing, twist_eigenvalue, verify_yang_baxter
from .braid import BraidWord, knot_invariant, parse_braid
from .bethe import CriticalConfig, closed_form_one_point, closed_form_two_point_c0, newton_refine

__version__ = "0.1.0"

__all__ = [
    "QLaurent", "QFrac", "q", "parse", "serialize",
    "LieType", "WeightIndex", "weight_table",
    "RMatrix", "build_monodromy", "build_pairing", "twist_eigenvalue", "verify_yang_baxter",
    "BraidWord", "parse_braid", "knot_invariant",
    "CriticalConfig", "closed_form_one_point", "closed_form_two_point_c0", "newton_refine",
]
