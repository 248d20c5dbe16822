"""Monopole-dimer model on Cartesian products of plane graphs.

Exact signed partition functions by determinant or enumeration,
closed-form spectral products for grids, and elliptic-integral
asymptotics for the limiting densities.
"""

from .asymptotics import (
    DensityReport,
    elliptic_suite,
    free_energy_3d,
    free_energy_d,
    heuman_lambda,
    jacobi_zeta,
    rho_3,
    rho_d_x,
)
from .closed_forms import (
    FormulaResult,
    hypercube_pf,
    kasteleyn_2d_dimers,
    z2_grid,
    z3_grid,
    zd_grid,
)
from .errors import (
    DomainError,
    EmbeddingError,
    ExactArithmeticError,
    GeometryError,
    InvalidGraphError,
    MonodimerError,
    SizeCapError,
)
from .fixtures import example_multigraph, example_plane_graph
from .model import (
    LoopConfig,
    all_decompositions,
    all_directed_decompositions,
    build_K,
    compatible_decomposition,
    enumerate_configs,
    enumerate_even_loops,
    loop_sign_from_orientation,
    loop_weight_oriented,
    partition_bruteforce,
    sign_cycle_multiset,
    sign_of_loop_projections,
)
from .plane_graph import (
    Face,
    Orientation,
    PlaneGraph,
    canonical_orientation,
    enclosed_vertex_count,
    faces,
    graph_to_json,
    is_pfaffian,
    load_graph_json,
    path_graph,
    pfaffian_orientation,
    signed_area,
)
from .poly import (
    MPoly,
    PolyMatrix,
    det_fraction_free,
    det_numeric,
    exact_div,
    nth_root_poly,
)
from .products import (
    GridSpec,
    ProductGraph,
    ProjectionMultigraph,
    boustrophedon_grid,
    boustrophedon_labels,
    cartesian_product,
    e_i_count,
    grid2d_plane,
    i_projection,
    oriented_cartesian_product,
)
from .verify import run_suite

__version__ = "0.1.0"
