"""
Sparse self-expression: each column of X written as a sparse combination of the others.

For column i the solver minimizes ||c||_1 + (mu / 2) ||x_i - X c||_2^2 subject to c_i = 0,
the noise-penalized form of the sparse subspace clustering program. All columns are solved
together by accelerated proximal gradient (soft-thresholding) steps on the Gram matrix.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from errors import NumericalError
from settings import ssc_alpha, ssc_max_iters, ssc_tolerance

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SelfExpression:
    """
    Fields:
    C (np.ndarray): N x N coefficients, zero diagonal
    residual_norms (np.ndarray): ||x_i - X c_i||_2 per column
    solver_iters (np.ndarray): iterations each column took
    converged (np.ndarray): False for columns that hit the iteration cap
    mu (float): the data-fit weight that was used
    """

    C: np.ndarray
    residual_norms: np.ndarray
    solver_iters: np.ndarray
    converged: np.ndarray
    mu: float

    @property
    def flagged(self) -> np.ndarray:
        """Columns that did not reach the solver tolerance."""
        return np.flatnonzero(~self.converged)


def soft_threshold(values: np.ndarray, threshold: float) -> np.ndarray:
    return np.sign(values) * np.maximum(np.abs(values) - threshold, 0.0)


def default_mu(X: np.ndarray, alpha: float = ssc_alpha) -> float:  # noqa: N803
    """
    mu = alpha / min_i max_{j != i} |x_i' x_j|.

    Columns orthogonal to every other column are left out of the minimum; if all are,
    mu falls back to alpha.
    """
    gram = np.abs(X.T @ X)
    np.fill_diagonal(gram, 0.0)
    coherence = gram.max(axis=0)
    coherence = coherence[coherence > 0.0]
    if coherence.size == 0:
        return float(alpha)
    return float(alpha / coherence.min())


def solve_self_expression(
    X: np.ndarray,  # noqa: N803
    mu: float | None = None,
    solver_tol: float = ssc_tolerance,
    max_iters: int = ssc_max_iters,
) -> SelfExpression:
    """
    Parameters:
    X (np.ndarray): D x N data, one point per column
    mu (float | None): data-fit weight; None picks `default_mu(X)`
    solver_tol (float): a column stops once its largest coefficient change is below this
    max_iters (int): iteration cap; columns still moving are flagged, not fatal
    """
    X = np.asarray(X, dtype=np.float64)  # noqa: N806
    if X.ndim != 2:
        raise ValueError(f"data must be a D x N matrix, got shape {X.shape}")
    n = X.shape[1]
    if n < 2:
        raise ValueError("self-expression needs at least two columns")
    if not np.all(np.isfinite(X)):
        raise NumericalError("self-expression data contains non-finite values")
    if mu is None:
        mu = default_mu(X)
    if not mu > 0.0:
        raise ValueError(f"mu must be positive, got {mu}")

    gram = X.T @ X
    lipschitz = mu * float(scipy.linalg.eigvalsh(gram, subset_by_index=[n - 1, n - 1])[0])
    C = np.zeros((n, n))  # noqa: N806
    iters = np.zeros(n, dtype=np.int64)
    converged = np.zeros(n, dtype=bool)

    if lipschitz > 0.0:
        step = 1.0 / lipschitz
        momentum_point = np.zeros((n, n))
        active = np.arange(n)
        t = 1.0
        for iteration in range(1, max_iters + 1):
            y = momentum_point[:, active]
            gradient = mu * (gram @ y - gram[:, active])
            updated = soft_threshold(y - step * gradient, step)
            updated[active, np.arange(active.size)] = 0.0

            change = np.max(np.abs(updated - C[:, active]), axis=0)
            t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
            momentum_point[:, active] = updated + ((t - 1.0) / t_next) * (updated - C[:, active])
            C[:, active] = updated
            iters[active] = iteration
            t = t_next

            done = change < solver_tol
            converged[active[done]] = True
            active = active[~done]
            if active.size == 0:
                break
    else:
        # all-zero data: c = 0 is optimal for every column
        converged[:] = True

    residuals = np.linalg.norm(X - X @ C, axis=0)
    if not converged.all():
        logger.debug(
            "%d of %d self-expression columns hit the iteration cap", int((~converged).sum()), n
        )
    C.setflags(write=False)
    return SelfExpression(C, residuals, iters, converged, float(mu))
