"""
Synthetic group-structured 1-bit data.

Latent factors are standard normal, user group v has bias mean -2 + 0.4 v and item group j
has bias mean -3 + 0.6 j (v, j counted from 1). The latent matrix is rescaled to unit max
magnitude, pushed through the sigmoid, perturbed and quantized, and a random fraction pi of
the entries is kept as observed.
"""

from dataclasses import dataclass

import numpy as np

import settings
from model_core.BinaryRatings import BinaryRatings
from model_core.FactorSet import FactorSet
from model_core.GroupAssignment import GroupAssignment
from model_core.latent import assemble_M, binarize_predictions, predict_probabilities
from random_streams import stream

NOISE_MODES = ("threshold", "bernoulli")


@dataclass(frozen=True)
class SyntheticConfig:
    """
    Fields:
    n1, n2 (int): users and items
    m1, m2 (int): user and item groups; must divide n1 and n2
    K (int): latent dimension
    pi (float): observation rate in (0, 1]
    sigma (float): standard deviation of the additive noise in "threshold" mode
    noise_mode (str): "threshold" clamps f(M) + noise to [0, 1] and cuts at 0.5;
        "bernoulli" draws +1 with probability f(M)
    seed (int): seed of every draw
    """

    n1: int = settings.synthetic_users
    n2: int = settings.synthetic_items
    m1: int = settings.synthetic_user_groups
    m2: int = settings.synthetic_item_groups
    K: int = settings.latent_dimension
    pi: float = settings.observation_rate
    sigma: float = settings.noise_sigma
    noise_mode: str = settings.noise_mode
    seed: int = settings.default_seed

    def __post_init__(self):
        if not 0.0 < self.pi <= 1.0:
            raise ValueError(f"observation rate pi must lie in (0, 1], got {self.pi}")
        if min(self.n1, self.n2, self.m1, self.m2, self.K) < 1:
            raise ValueError("dimensions, group counts and K must be positive")
        if self.n1 % self.m1 or self.n2 % self.m2:
            raise ValueError(
                f"groups must divide evenly: n1={self.n1}, m1={self.m1}, n2={self.n2}, m2={self.m2}"
            )
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if self.noise_mode not in NOISE_MODES:
            raise ValueError(f"noise_mode must be one of {NOISE_MODES}, got {self.noise_mode!r}")


@dataclass(frozen=True, eq=False)
class SyntheticDataset:
    """
    Observed ratings with the ground truth that produced them.

    `factors` are rescaled by 1/sqrt(scale) so that assemble_M(factors, assignment)
    reproduces `M_true` up to rounding; `M_true` itself is the exact division by `scale`.
    """

    ratings: BinaryRatings
    factors: FactorSet
    assignment: GroupAssignment
    M_true: np.ndarray
    scale: float


def generate_synthetic(cfg: SyntheticConfig) -> SyntheticDataset:
    rng = stream(cfg.seed, "synthetic")

    P = rng.standard_normal((cfg.n1, cfg.K))  # noqa: N806
    Q = rng.standard_normal((cfg.n2, cfg.K))  # noqa: N806
    user_means = -2.0 + 0.4 * np.arange(1, cfg.m1 + 1)
    item_means = -3.0 + 0.6 * np.arange(1, cfg.m2 + 1)
    S_U = user_means[:, None] + rng.standard_normal((cfg.m1, cfg.K))  # noqa: N806
    T_J = item_means[:, None] + rng.standard_normal((cfg.m2, cfg.K))  # noqa: N806

    assignment = GroupAssignment.contiguous(cfg.n1, cfg.n2, cfg.m1, cfg.m2)
    raw = assemble_M(FactorSet(P, Q, S_U, T_J), assignment)
    scale = float(np.max(np.abs(raw)))
    M_true = raw / scale  # noqa: N806
    probabilities = predict_probabilities(M_true)

    if cfg.noise_mode == "threshold":
        noisy = probabilities + cfg.sigma * rng.standard_normal(probabilities.shape)
        signs = binarize_predictions(np.clip(noisy, 0.0, 1.0), 0.5)
    else:
        signs = np.where(rng.random(probabilities.shape) < probabilities, 1, -1)

    total = cfg.n1 * cfg.n2
    kept = np.sort(rng.choice(total, size=int(round(cfg.pi * total)), replace=False))
    users, items = np.divmod(kept, cfg.n2)
    ratings = BinaryRatings(cfg.n1, cfg.n2, users, items, signs.reshape(-1)[kept])

    root = 1.0 / np.sqrt(scale)
    truth = FactorSet(P * root, Q * root, S_U * root, T_J * root)
    M_true.setflags(write=False)
    return SyntheticDataset(ratings, truth, assignment, M_true, scale)
