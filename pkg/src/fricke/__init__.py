"""Exact q-expansions of modular functions over cyclotomic fields.

Submodules: ``cyclotomic`` (coefficient fields), ``qseries`` (truncated
Puiseux series), ``modfunc`` (j, Fricke and Siegel functions), ``galois``
(GL2(Z/N) actions), ``families`` (Fricke families and their verification),
``numeric`` (floating-point oracles) and ``cli``.
"""

from .cyclotomic import CycloNum
from .qseries import QExp
from .modfunc import FracVec
from .kernels import BACKEND

__all__ = ["CycloNum", "QExp", "FracVec", "BACKEND"]
__version__ = "0.1.0"
