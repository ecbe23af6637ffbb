"""expforge: expander generating sets for finite simple groups.

Construct explicit generating sets (standard SL_2 pair, torus-conjugate
sets, restriction-of-scalars embeddings, elementary matrices, block
elementary sets over matrix-ring powers, cube embeddings into
alternating groups), build the resulting Cayley or Schreier graphs, and
certify expansion numerically: spectral gap by dense and Lanczos routes,
exact expansion constants, diameters, and bounded-product
decompositions.
"""

from .cayley import SparseGraph, build_cayley, build_cayley_on, build_schreier
from .ffield import FieldElement, FieldSpec, make_field, norm, regular_matrix
from .gensets import (
    CubeSpec,
    GeneratingSet,
    cube_embeddings,
    elementary_set,
    nonsplit_torus,
    power_generators,
    restriction_of_scalars,
    search_conjugator,
    sl2_over_extension_plus_conjugator,
    sl2_standard,
    torus_conjugate_set,
)
from .groups import (
    GroupHandle,
    MatrixElement,
    PermElement,
    TupleElement,
    act_on_points,
    enumerate_group,
    psl_reduce,
)
from .spectral import (
    class_average_spectrum,
    dense_spectrum,
    diameter,
    edge_expansion_exact,
    lanczos_lambda2,
    vertex_expansion_exact,
)

__version__ = "0.1.0"

__all__ = [
    "CubeSpec",
    "FieldElement",
    "FieldSpec",
    "GeneratingSet",
    "GroupHandle",
    "MatrixElement",
    "PermElement",
    "SparseGraph",
    "TupleElement",
    "act_on_points",
    "build_cayley",
    "build_cayley_on",
    "build_schreier",
    "class_average_spectrum",
    "cube_embeddings",
    "dense_spectrum",
    "diameter",
    "edge_expansion_exact",
    "elementary_set",
    "enumerate_group",
    "lanczos_lambda2",
    "make_field",
    "nonsplit_torus",
    "norm",
    "power_generators",
    "psl_reduce",
    "regular_matrix",
    "restriction_of_scalars",
    "search_conjugator",
    "sl2_over_extension_plus_conjugator",
    "sl2_standard",
    "torus_conjugate_set",
    "vertex_expansion_exact",
]
