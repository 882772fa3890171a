"""
psicong
=======

Congruences of combinatorial sequences modulo powers of 3, through the
basic series Psi(z) = prod_j (1 + z^(3^j)).
"""

from .errors import PsiCongError
from .psi_core import PsiContext, PsiPoly
from .ring3 import Residue
from .sequences import SequenceId

__version__ = "0.1.0"

__all__ = ["PsiCongError", "PsiContext", "PsiPoly", "Residue", "SequenceId", "__version__"]
