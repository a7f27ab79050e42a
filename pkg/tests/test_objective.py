import math

import numpy as np
import pytest
from scipy.special import expit

from errors import NumericalError
from loss_grad import (
    ObservationMasks,
    block_gradient,
    grad_all,
    grad_M,
    loss_F,
    loss_L,
    masks_from_observations,
)
from model_core import BinaryRatings, FactorBlock, FactorSet, GroupAssignment, assemble_M


def random_instance(seed: int):
    rng = np.random.default_rng(seed)
    n1 = int(rng.integers(2, 7))
    n2 = int(rng.integers(2, 9))
    K = int(rng.integers(1, 4))  # noqa: N806
    m1 = int(rng.integers(1, min(3, n1) + 1))
    m2 = int(rng.integers(1, min(3, n2) + 1))
    lam = (0.0, 37.0)[seed % 2]

    factors = FactorSet.random(n1, n2, m1, m2, K, 1.0, rng)
    assignment = GroupAssignment.random(n1, n2, m1, m2, rng)
    observed = rng.random((n1, n2)) < 0.6
    signs = np.where(rng.random((n1, n2)) < 0.5, 1, -1)
    masks = ObservationMasks(observed & (signs == 1), observed & (signs == -1))
    return factors, assignment, masks, lam


def scalar_loss(M, masks):  # noqa: N803
    total = 0.0
    for u in range(M.shape[0]):
        for i in range(M.shape[1]):
            p = 1.0 / (1.0 + math.exp(-M[u, i]))
            if masks.Y1[u, i]:
                total -= math.log(p)
            elif masks.Yneg1[u, i]:
                total -= math.log(1.0 - p)
    return total


@pytest.mark.parametrize("seed", range(50))
def test_block_gradients_match_central_differences(seed):
    factors, assignment, masks, lam = random_instance(seed)
    analytic = grad_all(factors, assignment, masks, lam)
    h = 1e-5

    for block in FactorBlock:
        base = factors.block(block)
        numeric = np.zeros_like(base)
        for index in np.ndindex(base.shape):
            plus = base.copy()
            minus = base.copy()
            plus[index] += h
            minus[index] -= h
            numeric[index] = (
                loss_L(factors.with_block(block, plus), assignment, masks, lam)
                - loss_L(factors.with_block(block, minus), assignment, masks, lam)
            ) / (2.0 * h)

        exact = analytic.block(block)
        scale = max(float(np.max(np.abs(exact))), 1.0)
        assert float(np.max(np.abs(exact - numeric))) / scale < 1e-5, block


@pytest.mark.parametrize("seed", range(10))
def test_losses_match_scalar_loops(seed):
    factors, assignment, masks, lam = random_instance(seed)
    M = assemble_M(factors, assignment)  # noqa: N806

    expected_f = scalar_loss(M, masks)
    penalty = sum(float(np.sum(factors.block(block) ** 2)) for block in FactorBlock)

    assert loss_F(M, masks) == pytest.approx(expected_f, rel=1e-10, abs=1e-10)
    assert loss_L(factors, assignment, masks, lam) == pytest.approx(
        expected_f + lam * penalty, rel=1e-10, abs=1e-10
    )


@pytest.mark.parametrize("seed", range(5))
def test_loss_matches_bracket_form(seed):
    _, _, masks, _ = random_instance(seed)
    M = np.random.default_rng(seed).normal(0.0, 3.0, size=masks.shape)  # noqa: N806
    f = expit(M)

    bracket = -np.sum(masks.Y1 * np.log(f) + masks.Yneg1 * np.log(1.0 - f))

    assert loss_F(M, masks) == pytest.approx(bracket, rel=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_gradient_matches_bracket_form(seed):
    _, _, masks, _ = random_instance(seed)
    M = np.random.default_rng(seed).normal(0.0, 3.0, size=masks.shape)  # noqa: N806

    bracket = masks.Yneg1 + (masks.Y1 + masks.Yneg1) * (expit(M) - 1.0)

    np.testing.assert_allclose(grad_M(M, masks), bracket, rtol=0.0, atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_loss_is_positive_on_nonempty_omega(seed):
    rng = np.random.default_rng(seed)
    observed = np.zeros((4, 5), dtype=bool)
    observed[rng.integers(4), rng.integers(5)] = True
    observed |= rng.random((4, 5)) < 0.3
    signs = np.where(rng.random((4, 5)) < 0.5, 1, -1)
    masks = ObservationMasks(observed & (signs == 1), observed & (signs == -1))
    M = rng.normal(0.0, 5.0, size=(4, 5))  # noqa: N806

    assert loss_F(M, masks) > 0.0


def test_saturated_entries_stay_finite():
    masks = ObservationMasks(np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]]))
    M = np.array([[-1000.0, 1000.0]])  # noqa: N806

    assert loss_F(M, masks) == pytest.approx(2000.0)
    np.testing.assert_allclose(grad_M(M, masks), [[-1.0, 1.0]])


def test_gradient_is_zero_off_omega():
    masks = ObservationMasks(
        np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 0.0]])
    )
    G = grad_M(np.full((2, 2), 0.3), masks)  # noqa: N806

    assert G[0, 1] == 0.0 and G[1, 1] == 0.0
    assert G[0, 0] == pytest.approx(expit(0.3) - 1.0)
    assert G[1, 0] == pytest.approx(expit(0.3))


def test_empty_omega_leaves_only_the_penalty():
    factors = FactorSet.random(3, 4, 2, 2, 2, 1.0, np.random.default_rng(5))
    assignment = GroupAssignment.random(3, 4, 2, 2, np.random.default_rng(6))
    masks = masks_from_observations(BinaryRatings.empty(3, 4))

    assert loss_L(factors, assignment, masks, 2.0) == pytest.approx(2.0 * factors.squared_norm())
    np.testing.assert_allclose(
        block_gradient(FactorBlock.Q, factors, assignment, masks, 2.0), 4.0 * factors.Q
    )


def test_negative_lambda_is_rejected():
    factors, assignment, masks, _ = random_instance(0)
    with pytest.raises(ValueError):
        loss_L(factors, assignment, masks, -1.0)


def test_non_finite_latent_matrix_is_rejected():
    masks = ObservationMasks(np.ones((1, 1)), np.zeros((1, 1)))
    with pytest.raises(NumericalError):
        loss_F(np.array([[np.nan]]), masks)


def test_masks_must_be_disjoint():
    with pytest.raises(ValueError):
        ObservationMasks(np.ones((2, 2)), np.eye(2))
