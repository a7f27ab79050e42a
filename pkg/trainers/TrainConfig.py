from dataclasses import dataclass

import settings


@dataclass(frozen=True)
class TrainConfig:
    """
    Hyperparameters of the block gradient descent fit.

    Fields:
    K (int): latent dimension
    lam (float): regularization weight shared by P, S_U, Q and T_J
    step_size (float): largest step any block tries
    max_outer_iters (int): cap on full P, S_U, Q, T_J cycles; 0 returns the initialization
    inner_steps_per_block (int): gradient steps per block per cycle
    tolerance (float): stop when the relative loss change over a cycle falls below this
    seed (int): seed of the factor initialization
    init_scale (float): standard deviation of the normal initialization
    max_halvings (int): backtracking budget per step
    """

    K: int = settings.latent_dimension
    lam: float = settings.regularization
    step_size: float = settings.step_size
    max_outer_iters: int = settings.max_outer_iters
    inner_steps_per_block: int = settings.inner_steps_per_block
    tolerance: float = settings.tolerance
    seed: int = settings.default_seed
    init_scale: float = settings.init_scale
    max_halvings: int = settings.max_halvings

    def __post_init__(self):
        if self.K < 1:
            raise ValueError(f"K must be positive, got {self.K}")
        if not self.lam >= 0.0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")
        if not self.step_size > 0.0:
            raise ValueError(f"step_size must be positive, got {self.step_size}")
        if self.max_outer_iters < 0:
            raise ValueError(f"max_outer_iters must be nonnegative, got {self.max_outer_iters}")
        if self.inner_steps_per_block < 1:
            raise ValueError("inner_steps_per_block must be at least 1")
        if not 0.0 < self.tolerance < 1.0:
            raise ValueError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        if not self.init_scale > 0.0:
            raise ValueError(f"init_scale must be positive, got {self.init_scale}")
        if self.max_halvings < 0:
            raise ValueError("max_halvings must be nonnegative")
