"""Gromov hyperbolicity of finite metric spaces, geodesic graphs and metric trees."""

from .errors import DeltaTreeError
from .formats import (
    emit_csv,
    emit_edge_list,
    emit_newick,
    parse_distance_csv,
    parse_edge_list,
    parse_newick,
)
from .geodesic_graph import (
    WeightedGraph,
    all_pairs_shortest,
    build_graph,
    canonical_geodesic,
    delta_thin,
    interval_set,
    thin_relations,
    tripod_points,
)
from .hyperbolicity import (
    DeltaWitness,
    HyperbolicityReport,
    delta_four_point,
    delta_gromov,
    equivalence_report,
    satisfies_four_point,
)
from .metric_space import (
    FiniteMetricSpace,
    build_space,
    diameter,
    gromov_product,
    subspace,
    validate_metric,
)
from .metric_tree import (
    MetricTree,
    TreePoint,
    betweenness_set,
    build_tree,
    check_gluing,
    project_onto_segment,
    project_onto_subtree,
    tree_distance,
)
from .tree_realization import realize_tree, verify_embedding

__version__ = "0.1.0"
