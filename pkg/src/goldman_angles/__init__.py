"""Goldman brackets, intersection angles and twist sweeps on hyperbolic surfaces."""

from .config import Tolerances, tolerances, use_tolerances
from .errors import GoldmanError
from .goldman import BracketSum, IntersectionRecord, goldman_bracket, term_count
from .surface import SurfaceRep, holed_torus, pants

__all__ = [
    "BracketSum",
    "GoldmanError",
    "IntersectionRecord",
    "SurfaceRep",
    "Tolerances",
    "goldman_bracket",
    "holed_torus",
    "pants",
    "term_count",
    "tolerances",
    "use_tolerances",
]

__version__ = "0.1.0"
