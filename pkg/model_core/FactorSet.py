from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from errors import NumericalError


class FactorBlock(Enum):
    """
    The four factor blocks, in the order the trainer visits them.
    """

    P = "P"
    S_U = "S_U"
    Q = "Q"
    T_J = "T_J"


BLOCK_ORDER: tuple[FactorBlock, ...] = (
    FactorBlock.P,
    FactorBlock.S_U,
    FactorBlock.Q,
    FactorBlock.T_J,
)


def _frozen(matrix: np.ndarray, name: str) -> np.ndarray:
    array = np.array(matrix, dtype=np.float64, copy=True)
    if array.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got shape {array.shape}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FactorSet:
    """
    The factor matrices of the group-specific model.

    P (n1 x K) and Q (n2 x K) hold per-user and per-item latent vectors, S_U (m1 x K) and
    T_J (m2 x K) hold one bias vector per user group and per item group. Arrays are copied
    and made read-only on construction; use `with_block` to derive an updated set.
    """

    P: np.ndarray
    Q: np.ndarray
    S_U: np.ndarray
    T_J: np.ndarray

    def __post_init__(self):
        for name in ("P", "Q", "S_U", "T_J"):
            object.__setattr__(self, name, _frozen(getattr(self, name), name))

        widths = {self.P.shape[1], self.Q.shape[1], self.S_U.shape[1], self.T_J.shape[1]}
        if len(widths) != 1:
            raise ValueError(
                "P, Q, S_U and T_J must share the latent dimension, got column counts "
                f"{self.P.shape[1]}, {self.Q.shape[1]}, {self.S_U.shape[1]}, {self.T_J.shape[1]}"
            )
        if self.K < 1:
            raise ValueError("latent dimension K must be positive")

        for name in ("P", "Q", "S_U", "T_J"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise NumericalError(f"factor {name} contains non-finite entries")

    @property
    def K(self) -> int:  # noqa: N802
        return self.P.shape[1]

    @property
    def n1(self) -> int:
        return self.P.shape[0]

    @property
    def n2(self) -> int:
        return self.Q.shape[0]

    @property
    def m1(self) -> int:
        return self.S_U.shape[0]

    @property
    def m2(self) -> int:
        return self.T_J.shape[0]

    def block(self, block: FactorBlock) -> np.ndarray:
        return getattr(self, block.value)

    def with_block(self, block: FactorBlock, value: np.ndarray) -> "FactorSet":
        return replace(self, **{block.value: value})

    def squared_norm(self) -> float:
        """
        Sum of the squared Frobenius norms of all four blocks.
        """
        return float(sum(np.sum(getattr(self, name) ** 2) for name in ("P", "S_U", "Q", "T_J")))

    def equals(self, other: "FactorSet") -> bool:
        """Bitwise equality of all four blocks."""
        return all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in ("P", "Q", "S_U", "T_J")
        )

    @classmethod
    def zeros(cls, n1: int, n2: int, m1: int, m2: int, K: int) -> "FactorSet":  # noqa: N803
        return cls(np.zeros((n1, K)), np.zeros((n2, K)), np.zeros((m1, K)), np.zeros((m2, K)))

    @classmethod
    def random(
        cls,
        n1: int,
        n2: int,
        m1: int,
        m2: int,
        K: int,  # noqa: N803
        scale: float,
        rng: np.random.Generator,
    ) -> "FactorSet":
        """
        I.i.d. normal entries with standard deviation `scale`, drawn in the order P, Q, S_U, T_J.
        """
        return cls(
            rng.normal(0.0, scale, size=(n1, K)),
            rng.normal(0.0, scale, size=(n2, K)),
            rng.normal(0.0, scale, size=(m1, K)),
            rng.normal(0.0, scale, size=(m2, K)),
        )
