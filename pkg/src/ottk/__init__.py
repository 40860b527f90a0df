"""Transport transforms for signals and images.

Closed-form 1D optimal transport turned into invertible signal transforms
(CDT and its signed extension), their sliced 2D versions built on the Radon
transform (RCDT, RSCDT), the discrete linear-optimal-transport embedding,
transform-space metrics and geodesics, and the downstream pipelines
(affine parameter estimation, nearest-subspace classification,
transport-based morphometry).
"""

from .measures import (
    Grid1D,
    Density1D,
    SignedDensity1D,
    Cdf1D,
    QuantileRep,
    DiscreteMeasure1D,
    cdf_from_density,
    quantile_from_cdf,
    quantile_of_discrete,
    pushforward_monotone,
    jordan_split,
)
from .cdt import (
    CdtRep,
    MonotoneMap,
    cdt_forward,
    cdt_inverse,
    d_cdt,
    cdt_geodesic,
    cdt_geodesic_rep,
    cdt_apply_map,
    normalized_energy_density,
)
from .scdt import (
    ScdtRep,
    scdt_forward,
    scdt_inverse,
    d_scdt,
    scdt_geodesic_positive,
    scdt_geodesic_positive_rep,
)
from .discrete_ot import (
    DiscreteMeasure2D,
    TransportPlan,
    LotEmbedding,
    solve_kantorovich,
    w2_1d,
    w2_discrete_1d,
    sw2_pointcloud,
    lot_embed,
    d_lot,
    lot_geodesic,
    lot_geodesic_embedding,
)
from .radon import (
    Image2D,
    Sinogram,
    radon_forward,
    radon_inverse,
    slice_pointcloud,
)
from .rcdt import (
    RcdtRep,
    RscdtRep,
    SliceMap,
    rcdt_forward,
    rcdt_inverse,
    d_rcdt,
    slice_pushforward,
    rscdt_forward,
    rscdt_inverse,
    d_rscdt,
    rcdt_distance_with_reference,
)
from .linalg import sym_eig, gen_eig, lstsq_affine
from .estimation import EstimationResult, estimate_affine
from .subspace import SubspaceModel, fit_nearest_subspace, classify
from .tbm import TbmModel, tbm_pca, tbm_plda, visualize_mode, ModeSample

__version__ = "0.1.0"
