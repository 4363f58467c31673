"""Capacity-centric (C2) clustering of distributed MIMO networks.

Geometry and node sampling, three-slope path loss, Monte-Carlo and
large-system cluster capacity, closed-form capacity bounds, and the
C2 / cellular / CoMP architectures compared on common node sets.
"""

from .architectures import C2, CELLULAR, COMP, KINDS, Architecture, Cluster, build, build_c2, build_cellular, build_comp
from .channel import (
    CapacityEstimate,
    ClusterChannel,
    asymptotic_eigen_capacity,
    build_cluster_channel,
    mc_capacity,
    sample_capacity,
)
from .flags import UNBOUNDED, is_unbounded
from .geometry import Disk, Point2D, distance, nearest_index, pack_disks, packing_count
from .metrics import CapacityReport, ClusterCapacity, evaluate_architecture
from .pathloss import PowerLawParams, ThreeSlopeParams, gain, gain_squared, plane_integral
from .quadrature import QuadratureError, integrate_gain
from .sampling import DensityProfile, NodeSet, sample_network, sample_nodes
from .theory import (
    BoundSet,
    RegionPair,
    bound_set,
    cj_max_lower_bound,
    cj_min_lower_bound,
    corollary1_capacity,
    q_of_rj,
    theorem1_capacity,
    vj_max_upper_bound,
    vj_min_upper_bound,
    vj_of_x,
)

__version__ = "0.1.0"
