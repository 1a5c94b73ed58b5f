"""Shared generators for randomized sweeps (seeded, reproducible)."""

from __future__ import annotations

import numpy as np
import pytest

from limrod import MaterialParams, Loads, Strains

P_GRID = (1.0, 2.0, 3.0, 4.0)


def random_params(
    rng: np.random.Generator,
    p: float | None = None,
    normalized: bool = True,
    coupling: float = 0.95,
) -> MaterialParams:
    """Random admissible parameter set; |iota| stays below
    sqrt(coupling) * beta * eta so the definiteness margin never collapses."""
    alpha, beta, zeta, eta = 10.0 ** rng.uniform(-0.7, 0.7, size=4)
    iota = rng.uniform(-1.0, 1.0) * np.sqrt(coupling) * beta * eta
    if p is None:
        p = float(rng.choice(P_GRID))
    gamma, ref = (1.0, 1.0) if normalized else tuple(10.0 ** rng.uniform(-1, 1, size=2))
    return MaterialParams(
        alpha=float(alpha),
        beta=float(beta),
        gamma=float(gamma),
        zeta=float(zeta),
        eta=float(eta),
        iota=float(iota),
        p=p,
        ref_length=float(ref),
    )


def strain_form_matrix(params: MaterialParams) -> np.ndarray:
    """Independent 6x6 matrix of Q on (u, v - e3), built from the definition."""
    m = np.diag(
        [
            params.alpha**2,
            params.alpha**2,
            params.beta**2,
            params.zeta**2,
            params.zeta**2,
            params.eta**2,
        ]
    )
    m[2, 5] = m[5, 2] = params.iota
    return m


def load_form_matrix(params: MaterialParams) -> np.ndarray:
    """Independent 6x6 matrix of Q* on loads, built from the definition."""
    det = params.beta**2 * params.eta**2 - params.iota**2
    m = np.diag(
        [
            1.0 / params.alpha**2,
            1.0 / params.alpha**2,
            params.eta**2 / det,
            1.0 / params.zeta**2,
            1.0 / params.zeta**2,
            params.beta**2 / det,
        ]
    )
    m[2, 5] = m[5, 2] = -params.iota / det
    return m


def random_strains(
    rng: np.random.Generator, params: MaterialParams, q_target: float
) -> Strains:
    """Strain state with Q(u, v) exactly q_target, in a random direction."""
    direction = rng.standard_normal(6)
    m = strain_form_matrix(params)
    q_dir = direction @ m @ direction
    dev = direction * np.sqrt(q_target / q_dir)
    return Strains(dev[0], dev[1], dev[2], dev[3], dev[4], 1.0 + dev[5])


def random_loads(
    rng: np.random.Generator, params: MaterialParams, qstar_target: float
) -> Loads:
    """Load state with Q*(m, n) exactly qstar_target, in a random direction."""
    direction = rng.standard_normal(6)
    m = load_form_matrix(params)
    q_dir = direction @ m @ direction
    vec = direction * np.sqrt(qstar_target / q_dir)
    return Loads(*vec)


@pytest.fixture
def demo_params() -> MaterialParams:
    """Bifurcating reference set used throughout the closed-form examples."""
    return MaterialParams(alpha=1.0, beta=1.0, gamma=1.0, zeta=1.0, eta=2.0, iota=0.0, p=2.0)
