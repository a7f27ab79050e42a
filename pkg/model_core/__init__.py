from .BinaryRatings import BinaryRatings as BinaryRatings
from .FactorSet import BLOCK_ORDER as BLOCK_ORDER
from .FactorSet import FactorBlock as FactorBlock
from .FactorSet import FactorSet as FactorSet
from .GroupAssignment import GroupAssignment as GroupAssignment
from .latent import assemble_M as assemble_M
from .latent import binarize_predictions as binarize_predictions
from .latent import expand_group_factors as expand_group_factors
from .latent import item_side as item_side
from .latent import predict_probabilities as predict_probabilities
from .latent import sigmoid as sigmoid
from .latent import user_side as user_side
