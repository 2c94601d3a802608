"""Exact Macdonald functions of (almost) rectangular shape and q-Dyson constant terms."""

__version__ = "0.1.0"

from .exactq import ONE, ZERO, PoleError, RatFuncQ, qpoch, qpoch_rf  # noqa: E402
from .laurent import LaurentPoly, expand_F  # noqa: E402
from .macroutes import (  # noqa: E402
    Route,
    RouteResult,
    jack_hyperdet,
    mac_filtration,
    mac_gram_schmidt,
    mac_rect_comb,
    mac_rect_lowering,
    mac_rect_vertex,
)
from .partitions import Partition, exact_complement, rect_filtration  # noqa: E402
from .qdyson import CTReport, cla, ct_product, kadell_coeff, vanishing_scan  # noqa: E402
from .symfunc import SymFunc, g, macdonald_gs, qn, scalar  # noqa: E402

__all__ = [
    "RatFuncQ", "PoleError", "ONE", "ZERO", "qpoch", "qpoch_rf",
    "LaurentPoly", "expand_F",
    "Route", "RouteResult", "mac_gram_schmidt", "mac_rect_lowering", "mac_rect_comb",
    "mac_rect_vertex", "mac_filtration", "jack_hyperdet",
    "Partition", "exact_complement", "rect_filtration",
    "CTReport", "ct_product", "kadell_coeff", "cla", "vanishing_scan",
    "SymFunc", "g", "qn", "macdonald_gs", "scalar",
]
