"""Evidential, probabilistic and numerical node attributes for community detection."""

from evident.belief import (
    FrameOfDiscernment,
    JaccardMatrix,
    MassFunction,
    focal_elements,
    is_consonant,
    jaccard_matrix,
    jousselme_distance,
    make_mass,
)
from evident.graphs import GroundTruth, Network, builtin, load_edge_list, load_gml
from evident.attributes import (
    AttributeTable,
    NoiseSpec,
    class_interval,
    gen_evidential,
    gen_numerical,
    gen_probabilistic,
    inject_noise,
    sort_to_true_class,
)
from evident.clustering import ClusterAssignment, DistanceMatrix, distance_matrix, kmedoids
from evident.metrics import (
    Partition,
    RunReport,
    confidence_interval,
    entropy,
    joint_entropy,
    nmi,
)

__version__ = "0.1.0"
