"""
unitri: unitriangular factorisations G = U U^- U U^- ... of SL(n, R) over exact rings.
"""

from .elimination import factor5, factor_sl, gauss
from .exactmat import Factorisation, Matrix, verify_factorisation
from .monomial import factor_monomial, factor_torus
from .rings import ring_from_spec
from .sl2core import factor_sl2
from .zp import factor_sl2_zp, factor_sl_n_zp

__all__ = [
    "Factorisation",
    "Matrix",
    "factor5",
    "factor_monomial",
    "factor_sl",
    "factor_sl2",
    "factor_sl2_zp",
    "factor_sl_n_zp",
    "factor_torus",
    "gauss",
    "ring_from_spec",
    "verify_factorisation",
]
