"""Word metrics, subgroup distortion profiles and bicombing constants for
groups with exactly solvable word problems."""

from ._kernel import HAVE_COMPILED
from .words import Alphabet, Presentation, Word

__version__ = "0.1.0"

__all__ = ["Alphabet", "Presentation", "Word", "HAVE_COMPILED", "__version__"]
