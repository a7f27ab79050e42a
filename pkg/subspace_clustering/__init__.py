from .affinity import AffinityGraph as AffinityGraph
from .affinity import build_affinity as build_affinity
from .ClusterLabels import ClusterLabels as ClusterLabels
from .kmeans import kmeans as kmeans
from .SelfExpression import SelfExpression as SelfExpression
from .SelfExpression import default_mu as default_mu
from .SelfExpression import solve_self_expression as solve_self_expression
from .spectral import normalized_laplacian as normalized_laplacian
from .spectral import spectral_cluster as spectral_cluster
