"""
Reproductions of the synthetic relative-error trend: fits with the true groups on
200 x 800 draws, best of twenty replications per observation rate.
"""

import numpy as np
import pytest

from data_io import SyntheticConfig, generate_synthetic
from metrics import relative_error
from model_core import assemble_M
from trainers import TrainConfig, fit_gs1mc

pytestmark = pytest.mark.slow

RATES = (0.10, 0.15, 0.20, 0.25)
REPLICATIONS = 20


def best_relative_error(K: int, pi: float) -> float:  # noqa: N803
    errors = []
    for seed in range(REPLICATIONS):
        truth = generate_synthetic(SyntheticConfig(K=K, pi=pi, seed=seed))
        fit = fit_gs1mc(truth.ratings, truth.assignment, TrainConfig(K=K, lam=37.0, seed=seed))
        errors.append(relative_error(assemble_M(fit.factors, truth.assignment), truth.M_true))
    return min(errors)


@pytest.mark.parametrize(
    "K, expected",
    [(3, (1.00, 0.85, 0.78, 0.73)), (6, (1.00, 0.92, 0.81, 0.74))],
)
def test_relative_error_falls_as_more_entries_are_observed(K, expected):  # noqa: N803
    errors = np.array([best_relative_error(K, pi) for pi in RATES])

    assert np.all(np.diff(errors) <= 0.0), errors
    np.testing.assert_allclose(errors, expected, atol=0.15)
