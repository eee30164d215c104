"""Mordell-Weil lattices and Weil-Chatelet kernels of elliptic surfaces under cyclic base change.

Subpackages and modules:

- ``mwlat.algebra``: number field towers, polynomials, Smith normal form
- ``mwlat.weierstrass``: models, discriminants, minimization, Kodaira types
- ``mwlat.base_change``: pulling back along t -> t^p and fiber transitions
- ``mwlat.classification``: enumeration of L-stable configurations
- ``mwlat.mordell_weil``: sections, group law, Galois action, generator families
- ``mwlat.cohomology``: H^1 of cyclic groups on lattices
- ``mwlat.bounds``: Riemann-Hurwitz and rank-jump bounds
- ``mwlat.cli``: the ``mwlat`` command and its text formats
"""

__version__ = "0.1.0"

from .algebra import QQ, Poly, RatFunc, field_tower_create
from .base_change import analyze_base_change, pull_back, transition_type
from .classification import classify_k3_L_stable, enumerate_rational_L_stable
from .cohomology import GModule, h1_cyclic, wc_kernel_from_points, wc_kernel_rank_extremal
from .mordell_weil import FFPoint, add_points, shioda_tate_rank, trace
from .weierstrass import KodairaType, WeierstrassModel, fiber_configuration, minimize

__all__ = [
    "__version__",
    "QQ",
    "Poly",
    "RatFunc",
    "field_tower_create",
    "WeierstrassModel",
    "KodairaType",
    "minimize",
    "fiber_configuration",
    "pull_back",
    "analyze_base_change",
    "transition_type",
    "enumerate_rational_L_stable",
    "classify_k3_L_stable",
    "FFPoint",
    "add_points",
    "trace",
    "shioda_tate_rank",
    "GModule",
    "h1_cyclic",
    "wc_kernel_rank_extremal",
    "wc_kernel_from_points",
]
