from .ObservationMasks import ObservationMasks as ObservationMasks
from .ObservationMasks import masks_from_observations as masks_from_observations
from .objective import GradientSet as GradientSet
from .objective import block_gradient as block_gradient
from .objective import grad_all as grad_all
from .objective import grad_M as grad_M
from .objective import loss_F as loss_F
from .objective import loss_L as loss_L
from .objective import penalty as penalty
