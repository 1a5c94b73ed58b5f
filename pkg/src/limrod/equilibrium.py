"""Closed-form equilibrium families and balance-law verification.

All constructors work in the normalized gauge (reference length 1, force
scale 1); parameter sets are renormalized on entry and the load arguments
(thrust N, couples M3, M1) are understood in those units.

Families under a terminal thrust n(1) = N g3 (zero body loads):

  * trivial tensile branch: straight centerline along g3, constant twist
    and stretch; exists for every N.  A chiral rod (iota != 0) twists
    under pure tension, with sign(u3) = -sign(iota * N).
  * sheared branch: for materials satisfying two moduli inequalities there
    is a threshold thrust above which a second family exists, tilted by a
    unique angle theta(N) in (0, pi/2), with shear strains oscillating
    along the rod at the twist rate.  The branch bifurcates from the
    trivial one at the threshold and theta(N) increases toward a finite
    limit angle as N grows.

Families under isolated end couples (N = 0):

  * pure twist: constant d3, straight centerline along d3.  For a chiral
    rod the couple changes the rod length (Poynting effect), elongating it
    when sign(-iota * M3) > 0.
  * helical family (M2 = 0, M1 != 0, M3 = -M1 cot(theta)): the centerline
    is a helix of signed radius v3 sin(theta)/phi' and axial advance rate
    v3 cos(theta); at theta = pi/2 it degenerates to a circle traversed in
    a state of pure bending.

The theta in (pi/2, pi) and theta = pi variants of the thrust families are
mirror images of these: reflect N -> -N and theta -> pi - theta rather
than separate constructors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .constitutive import Loads, Strains, loads_from_strains, strains_from_loads
from .errors import BelowThreshold, DegenerateCouple, NoBifurcationError
from .kinematics import (
    Configuration,
    EulerAngles,
    _derivative,
    darboux_components,
    directors_from_euler,
)
from .material import MaterialParams, nondimensionalize, validate

__all__ = [
    "NoBifurcation",
    "BranchPoint",
    "EquilibriumState",
    "BalanceReport",
    "ThrustLimits",
    "shear_threshold",
    "sheared_angle",
    "sheared_angle_p2",
    "sheared_angle_limit",
    "thrust_strain_limits",
    "trivial_tensile_state",
    "sheared_tensile_state",
    "pure_twist_state",
    "helical_state",
    "check_balance",
    "state_from_configuration",
    "branch_sweep",
    "write_branch_csv",
    "BRANCH_CSV_HEADER",
]

BRANCH_CSV_HEADER = "N,theta,u3,v3,v_shear_amplitude,branch"

_BISECT_TOL = 1e-14


@dataclass(frozen=True)
class NoBifurcation:
    """Verdict that the material admits no sheared tensile branch."""

    condition: str
    detail: str

    def __str__(self) -> str:
        return f"{self.condition}: {self.detail}"


@dataclass(frozen=True)
class ThrustLimits:
    """Limiting strains on the trivial branch as the thrust grows unbounded."""

    u3_tension: float
    u3_compression: float
    stretch_tension: float
    stretch_compression: float


@dataclass(frozen=True)
class BranchPoint:
    """One point (at s = 0, psi0 = 0) of a tensile equilibrium branch."""

    N: float
    theta: float
    strains: Strains
    loads: Loads
    branch: str

    def __post_init__(self):
        if self.branch == "trivial":
            if self.theta != 0.0:
                raise ValueError("trivial branch points have theta = 0")
        elif self.branch == "sheared":
            if not 0.0 < self.theta < 0.5 * math.pi:
                raise ValueError("sheared branch points need theta in (0, pi/2)")
        else:
            raise ValueError(f"unknown branch {self.branch!r}")


@dataclass(frozen=True)
class EquilibriumState:
    """Sampled configuration plus director-frame loads and a descriptor.

    ``loads`` has shape (n, 6) with columns (m1, m2, m3, n1, n2, n3); the
    descriptor records the family, its inputs, and derived constants.
    """

    configuration: Configuration
    loads: np.ndarray
    descriptor: dict

    def __post_init__(self):
        loads = np.asarray(self.loads, dtype=float).copy()
        if loads.shape != (len(self.configuration.s), 6):
            raise ValueError("loads array must be (n_samples, 6)")
        loads.setflags(write=False)
        object.__setattr__(self, "loads", loads)

    def spatial_loads(self) -> tuple[np.ndarray, np.ndarray]:
        """Contact force and couple as fixed-basis vectors per sample."""
        dirs = self.configuration.directors
        m = np.einsum("nk,nki->ni", self.loads[:, :3], dirs)
        n = np.einsum("nk,nki->ni", self.loads[:, 3:], dirs)
        return n, m


@dataclass(frozen=True)
class BalanceReport:
    """Max-norm residuals of the two balance laws on a sampled state."""

    force_residual: float
    couple_residual: float
    h: float


# ---------------------------------------------------------------------------
# bifurcation threshold and sheared angle


def _branch_constants(pn: MaterialParams) -> tuple[float, float]:
    """(det, ratio) with det = beta^2 eta^2 - iota^2 and
    ratio = det / (beta^2 zeta^2), the moduli ratio governing the sheared
    branch; its dilatation is 1/(ratio - 1)."""
    det = pn.twist_stretch_det
    return det, det / (pn.beta**2 * pn.zeta**2)


def shear_threshold(params: MaterialParams) -> float | NoBifurcation:
    """Threshold thrust for the shearing bifurcation, or a NoBifurcation
    verdict naming the failed material condition.

    Requires (a) eta^2 > zeta^2 + iota^2/beta^2, so the sheared dilatation
    is positive, and (b) that dilatation staying strictly below its
    limiting value; then

        N^-p = (ratio - 1)^p (beta^2/det)^p - (beta^2/det)^{p/2}

    with det = beta^2 eta^2 - iota^2 and ratio = det/(beta^2 zeta^2).
    """
    pn = nondimensionalize(validate(params))
    det, ratio = _branch_constants(pn)
    if not ratio > 1.0:
        return NoBifurcation(
            condition="dilatation-positivity",
            detail=(
                "sheared-branch dilatation is not positive: requires "
                f"eta^2 > zeta^2 + iota^2/beta^2 (ratio = {ratio!r})"
            ),
        )
    inv_np = (ratio - 1.0) ** pn.p * (pn.beta**2 / det) ** pn.p - (
        pn.beta / math.sqrt(det)
    ) ** pn.p
    if not inv_np > 0.0:
        return NoBifurcation(
            condition="dilatation-limit",
            detail=(
                "sheared-branch dilatation would exceed its limiting value: "
                f"requires 1/(ratio - 1) < beta/sqrt(det) (gap = {inv_np!r})"
            ),
        )
    return inv_np ** (-1.0 / pn.p)


def _require_threshold(pn: MaterialParams) -> float:
    thresh = shear_threshold(pn)
    if isinstance(thresh, NoBifurcation):
        raise NoBifurcationError(str(thresh))
    return thresh


def _branch_fn(pn: MaterialParams, thrust: float, x: float) -> float:
    """Monotone function f_N(cos theta) whose unique root gives the sheared
    angle; strictly increasing on [0, 1]."""
    det, _ = _branch_constants(pn)
    g = (1.0 - x * x) / pn.zeta**2 + pn.beta**2 * x * x / det
    return (thrust**-pn.p + g ** (0.5 * pn.p)) ** (-1.0 / pn.p) * pn.beta**2 * x / det


def sheared_angle(params: MaterialParams, thrust: float) -> float:
    """Tilt angle theta(N) in (0, pi/2) of the sheared branch at thrust N.

    Found by bisection on cos(theta) to absolute tolerance 1e-14; the
    bracket [0, 1] is guaranteed by monotonicity of the branch function.
    Raises BelowThreshold for N <= threshold and NoBifurcationError when
    the material admits no sheared branch at all.
    """
    pn = nondimensionalize(validate(params))
    thresh = _require_threshold(pn)
    if not thrust > thresh:
        raise BelowThreshold(f"thrust {thrust!r} <= threshold {thresh!r}")
    _, ratio = _branch_constants(pn)
    target = 1.0 / (ratio - 1.0)
    lo, hi = 0.0, 1.0
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if _branch_fn(pn, thrust, mid) < target:
            lo = mid
        else:
            hi = mid
    return math.acos(0.5 * (lo + hi))


def sheared_angle_p2(params: MaterialParams, thrust: float) -> float:
    """Closed-form sheared angle, valid only for exponent p = 2:

        cos theta = [A^2 + A]^{-1/2} (1/N^2 + 1/zeta^2)^{1/2},
        A = 1/zeta^2 - beta^2/det.
    """
    pn = nondimensionalize(validate(params))
    if pn.p != 2.0:
        raise ValueError("closed form requires p = 2")
    thresh = _require_threshold(pn)
    if not thrust > thresh:
        raise BelowThreshold(f"thrust {thrust!r} <= threshold {thresh!r}")
    a = 1.0 / pn.zeta**2 - pn.beta**2 / pn.twist_stretch_det
    c = (a * a + a) ** -0.5 * math.sqrt(thrust**-2 + pn.zeta**-2)
    return math.acos(c)


def sheared_angle_limit(params: MaterialParams) -> float:
    """Limit of the sheared angle as the thrust grows unbounded:
    arccos{ [A^2 + A]^{-1/2} / zeta } with A = 1/zeta^2 - beta^2/det."""
    pn = nondimensionalize(validate(params))
    _require_threshold(pn)
    a = 1.0 / pn.zeta**2 - pn.beta**2 / pn.twist_stretch_det
    return math.acos((a * a + a) ** -0.5 / pn.zeta)


def thrust_strain_limits(params: MaterialParams) -> ThrustLimits:
    """Limiting twist and stretch deviation on the trivial branch as
    N -> +inf / -inf."""
    pn = nondimensionalize(validate(params))
    root = math.sqrt(pn.twist_stretch_det)
    return ThrustLimits(
        u3_tension=-pn.iota / (pn.beta * root),
        u3_compression=pn.iota / (pn.beta * root),
        stretch_tension=pn.beta / root,
        stretch_compression=-pn.beta / root,
    )


# ---------------------------------------------------------------------------
# state constructors


def _grid(grid_h: float) -> np.ndarray:
    if not 0.0 < grid_h <= 0.1:
        raise ValueError(f"grid_h must lie in (0, 0.1], got {grid_h!r}")
    n = max(2, round(1.0 / grid_h))
    return np.linspace(0.0, 1.0, n + 1)


def _sample_frames(phi: np.ndarray, theta: float, psi: np.ndarray) -> np.ndarray:
    frames = np.empty((len(psi), 3, 3))
    for i in range(len(psi)):
        frames[i] = directors_from_euler(
            EulerAngles(float(phi[i]), theta, float(psi[i]))
        ).matrix()
    return frames


def _params_echo(pn: MaterialParams) -> dict:
    return {
        "alpha": pn.alpha,
        "beta": pn.beta,
        "gamma": pn.gamma,
        "zeta": pn.zeta,
        "eta": pn.eta,
        "iota": pn.iota,
        "p": pn.p,
        "ref_length": pn.ref_length,
    }


def _endpoint_state(pn: MaterialParams, loads_row: np.ndarray) -> dict:
    """Loads and strains at s = 0 as flat six-number arrays (wire format)."""
    loads = Loads(*loads_row)
    return {
        "loads0": loads.as_array().tolist(),
        "strains0": strains_from_loads(pn, loads).as_array().tolist(),
    }


def trivial_tensile_state(
    params: MaterialParams,
    thrust: float,
    psi0: float = 0.0,
    grid_h: float = 1e-3,
) -> EquilibriumState:
    """Straight tensile/compressive state: theta = 0, d3 = g3, n = N g3.

    The strains are constant, given by the forward map at pure tension;
    the directors spin about g3 at the constitutive twist rate u3.
    """
    pn = nondimensionalize(validate(params))
    st = strains_from_loads(pn, Loads(0.0, 0.0, 0.0, 0.0, 0.0, thrust))
    s = _grid(grid_h)
    psi = st.u3 * s + psi0
    frames = _sample_frames(np.zeros_like(s), 0.0, psi)
    points = np.zeros((len(s), 3))
    points[:, 2] = st.v3 * s
    loads = np.zeros((len(s), 6))
    loads[:, 5] = thrust
    descriptor = {
        "family": "trivial",
        **_endpoint_state(pn, loads[0]),
        "thrust": thrust,
        "theta": 0.0,
        "psi0": psi0,
        "phi0": 0.0,
        "grid_h": grid_h,
        "params": _params_echo(pn),
        "strains": {"u3": st.u3, "v3": st.v3},
    }
    return EquilibriumState(
        configuration=Configuration(s=s, points=points, directors=frames),
        loads=loads,
        descriptor=descriptor,
    )


def sheared_tensile_state(
    params: MaterialParams,
    thrust: float,
    psi0: float = 0.0,
    grid_h: float = 1e-3,
) -> EquilibriumState:
    """Sheared tensile state at thrust N > threshold, tilted by theta(N).

    Twist and dilatation are N-independent constants of the material:
    v3 - 1 = 1/(ratio - 1) and u3 = -iota (v3 - 1)/beta^2; the shear
    strains oscillate along the rod with amplitude
    (v3 - 1) * ratio * tan(theta) at phase u3 s + psi0. The centerline
    stays parallel to g3 while d3 tilts by theta.
    """
    pn = nondimensionalize(validate(params))
    theta = sheared_angle(pn, thrust)
    det, ratio = _branch_constants(pn)
    k = 1.0 / (ratio - 1.0)
    u3 = -pn.iota * k / pn.beta**2
    v3 = 1.0 + k
    amplitude = k * ratio * math.tan(theta)
    sth, cth = math.sin(theta), math.cos(theta)

    # Internal consistency: the saturating factor of the branch loads must
    # match its closed form det/(beta^2 N cos(theta)) * k.
    qstar = thrust**2 * (sth**2 / pn.zeta**2 + pn.beta**2 * cth**2 / det)
    f_direct = (1.0 + qstar ** (0.5 * pn.p)) ** (-1.0 / pn.p)
    f_branch = det / (pn.beta**2 * thrust * cth) * k
    identity_residual = abs(f_direct - f_branch) / f_branch
    if identity_residual > 1e-8:
        raise ArithmeticError(
            f"sheared-branch identity violated: residual {identity_residual!r}"
        )

    s = _grid(grid_h)
    psi = u3 * s + psi0
    frames = _sample_frames(np.zeros_like(s), theta, psi)
    points = np.zeros((len(s), 3))
    points[:, 2] = (amplitude * sth + v3 * cth) * s
    loads = np.zeros((len(s), 6))
    loads[:, 3] = -thrust * sth * np.cos(psi)
    loads[:, 4] = thrust * sth * np.sin(psi)
    loads[:, 5] = thrust * cth
    descriptor = {
        "family": "sheared",
        **_endpoint_state(pn, loads[0]),
        "thrust": thrust,
        "theta": theta,
        "psi0": psi0,
        "phi0": 0.0,
        "grid_h": grid_h,
        "params": _params_echo(pn),
        "strains": {"u3": u3, "v3": v3, "v_shear_amplitude": amplitude},
        "identity_residual": identity_residual,
    }
    return EquilibriumState(
        configuration=Configuration(s=s, points=points, directors=frames),
        loads=loads,
        descriptor=descriptor,
    )


def pure_twist_state(
    params: MaterialParams,
    twist_couple: float,
    theta: float = 0.0,
    psi0: float = 0.0,
    grid_h: float = 1e-3,
) -> EquilibriumState:
    """Isolated twisting couple m = M3 d3 with zero contact force.

    d3 = sin(theta) g1 + cos(theta) g3 is constant (theta is free since
    n = 0; default 0), the centerline runs along d3 and the cross sections
    spin at the constitutive twist rate. A chiral rod changes length:
    sign(v3 - 1) = sign(-iota * M3), the Poynting effect.
    """
    pn = nondimensionalize(validate(params))
    st = strains_from_loads(pn, Loads(0.0, 0.0, twist_couple, 0.0, 0.0, 0.0))
    s = _grid(grid_h)
    psi = st.u3 * s + psi0
    frames = _sample_frames(np.zeros_like(s), theta, psi)
    d3 = np.array([math.sin(theta), 0.0, math.cos(theta)])
    points = st.v3 * np.outer(s, d3)
    loads = np.zeros((len(s), 6))
    loads[:, 2] = twist_couple
    descriptor = {
        "family": "twist",
        **_endpoint_state(pn, loads[0]),
        "twist_couple": twist_couple,
        "theta": theta,
        "psi0": psi0,
        "phi0": 0.0,
        "grid_h": grid_h,
        "params": _params_echo(pn),
        "strains": {"u3": st.u3, "v3": st.v3},
    }
    return EquilibriumState(
        configuration=Configuration(s=s, points=points, directors=frames),
        loads=loads,
        descriptor=descriptor,
    )


def helical_state(
    params: MaterialParams,
    bend_couple: float,
    theta: float,
    psi0: float = 0.0,
    grid_h: float = 1e-3,
) -> EquilibriumState:
    """Helical family under the constant couple M1 e1 + M3 e3 with
    M3 = -M1 cot(theta) (which keeps the couple spatially constant), n = 0.

    The centerline is a right-handed helix of signed radius
    a = v3 sin(theta)/phi' and axial rate b = v3 cos(theta); at
    theta = pi/2 the couple is M1 e1 alone and the centerline closes into
    a circle of radius |a| traversed in pure bending (u3 = 0, v3 = 1 for
    an achiral rod).
    """
    pn = nondimensionalize(validate(params))
    if bend_couple == 0.0:
        raise DegenerateCouple("helical family needs M1 != 0; use pure_twist_state")
    if not 0.0 < theta <= 0.5 * math.pi:
        raise ValueError(f"theta must lie in (0, pi/2], got {theta!r}")
    det = pn.twist_stretch_det
    sth, cth = math.sin(theta), math.cos(theta)
    cot = 0.0 if theta == 0.5 * math.pi else cth / sth
    m3 = -bend_couple * cot
    qstar = bend_couple**2 * (1.0 / pn.alpha**2 + pn.eta**2 * cot**2 / det)
    f = (1.0 + qstar ** (0.5 * pn.p)) ** (-1.0 / pn.p)
    u3 = -f * pn.eta**2 * bend_couple * cot / det
    v3 = 1.0 + f * pn.iota * bend_couple * cot / det
    dphi = -f * bend_couple / (pn.alpha**2 * sth)
    dpsi = u3 - cth * dphi

    s = _grid(grid_h)
    phi = dphi * s
    psi = dpsi * s + psi0
    frames = _sample_frames(phi, theta, psi)
    radius = v3 * sth / dphi
    pitch_rate = v3 * cth
    points = np.empty((len(s), 3))
    points[:, 0] = radius * np.sin(phi)
    points[:, 1] = radius * (1.0 - np.cos(phi))
    points[:, 2] = pitch_rate * s
    loads = np.zeros((len(s), 6))
    loads[:, 0] = bend_couple * np.cos(psi)
    loads[:, 1] = -bend_couple * np.sin(psi)
    loads[:, 2] = m3
    descriptor = {
        "family": "helix",
        **_endpoint_state(pn, loads[0]),
        "bend_couple": bend_couple,
        "twist_couple": m3,
        "theta": theta,
        "psi0": psi0,
        "phi0": 0.0,
        "grid_h": grid_h,
        "params": _params_echo(pn),
        "strains": {
            "u3": u3,
            "v3": v3,
            "u_flexure_amplitude": f * bend_couple / pn.alpha**2,
        },
        "phi_rate": dphi,
        "psi_rate": dpsi,
        "helix_radius": radius,
        "helix_pitch_rate": pitch_rate,
        "pitch_per_turn": 2.0 * math.pi * abs(pitch_rate / dphi),
    }
    return EquilibriumState(
        configuration=Configuration(s=s, points=points, directors=frames),
        loads=loads,
        descriptor=descriptor,
    )


# ---------------------------------------------------------------------------
# balance verification


def _fd(values: np.ndarray, h: float) -> np.ndarray:
    return (values[2:] - values[:-2]) / (2.0 * h)


def check_balance(
    state: EquilibriumState,
    body_force: Callable[[float], np.ndarray] | None = None,
    body_couple: Callable[[float], np.ndarray] | None = None,
) -> BalanceReport:
    """Max-norm residuals of n' + f = 0 and m' + r' x n + l = 0.

    Derivatives are central differences; residuals are evaluated only at
    samples whose full difference stencils stay clear of the one-sided
    endpoint stencils (i.e. samples 2..n-2), so the report converges at
    second order for smooth fields. Body loads default to zero.
    """
    cfg = state.configuration
    h = cfg.h
    if len(cfg.s) < 5:
        raise ValueError("need at least five samples to evaluate residuals")
    n_vec, m_vec = state.spatial_loads()
    dn = _fd(n_vec, h)
    dm = _fd(m_vec, h)
    dr = _fd(cfg.points, h)
    s_mid = cfg.s[1:-1]
    f = np.zeros_like(dn)
    l = np.zeros_like(dm)
    if body_force is not None:
        f = np.array([body_force(float(si)) for si in s_mid], dtype=float)
    if body_couple is not None:
        l = np.array([body_couple(float(si)) for si in s_mid], dtype=float)
    force_res = dn + f
    couple_res = dm + np.cross(dr, n_vec[1:-1]) + l
    # trim samples whose stencil touches the one-sided endpoint values
    force_max = float(np.abs(force_res[1:-1]).max())
    couple_max = float(np.abs(couple_res[1:-1]).max())
    return BalanceReport(force_residual=force_max, couple_residual=couple_max, h=h)


def state_from_configuration(params: MaterialParams, config: Configuration) -> EquilibriumState:
    """Recover an equilibrium state from bare geometry.

    Strains come from difference stencils (tangent components in the
    director frame plus the Darboux components), loads then follow from
    the constitutive inverse map; raises StrainOutOfRange if the geometry
    is constitutively impossible. The derived loads carry the O(h^2)
    discretization error of the stencils.
    """
    pn = nondimensionalize(validate(params))
    h = config.h
    dr = _derivative(config.points, h)
    v = np.einsum("ni,nki->nk", dr, config.directors)
    u = darboux_components(config.directors, h)
    loads = np.empty((len(config.s), 6))
    for i in range(len(config.s)):
        st = Strains(u[i, 0], u[i, 1], u[i, 2], v[i, 0], v[i, 1], v[i, 2])
        loads[i] = loads_from_strains(pn, st).as_array()
    descriptor = {
        "family": "reconstructed",
        "grid_h": h,
        "params": _params_echo(pn),
    }
    return EquilibriumState(configuration=config, loads=loads, descriptor=descriptor)


# ---------------------------------------------------------------------------
# branch sweep


def branch_sweep(
    params: MaterialParams,
    n_min: float,
    n_max: float,
    count: int,
) -> tuple[list[BranchPoint], float | NoBifurcation]:
    """Sample both tensile branches over a uniform thrust grid.

    Returns the points sorted by (N, branch) together with the threshold
    verdict; sheared points appear only for thrusts strictly above the
    threshold.
    """
    pn = nondimensionalize(validate(params))
    if not n_min < n_max:
        raise ValueError(f"need n_min < n_max, got {n_min!r} >= {n_max!r}")
    if count < 2:
        raise ValueError(f"need at least 2 sweep points, got {count!r}")
    thresh = shear_threshold(pn)
    det, ratio = _branch_constants(pn)
    points: list[BranchPoint] = []
    for thrust in np.linspace(n_min, n_max, count):
        thrust = float(thrust)
        st = strains_from_loads(pn, Loads(0.0, 0.0, 0.0, 0.0, 0.0, thrust))
        points.append(
            BranchPoint(
                N=thrust,
                theta=0.0,
                strains=st,
                loads=Loads(0.0, 0.0, 0.0, 0.0, 0.0, thrust),
                branch="trivial",
            )
        )
        if not isinstance(thresh, NoBifurcation) and thrust > thresh:
            theta = sheared_angle(pn, thrust)
            k = 1.0 / (ratio - 1.0)
            amplitude = k * ratio * math.tan(theta)
            sth, cth = math.sin(theta), math.cos(theta)
            points.append(
                BranchPoint(
                    N=thrust,
                    theta=theta,
                    strains=Strains(0.0, 0.0, -pn.iota * k / pn.beta**2, -amplitude, 0.0, 1.0 + k),
                    loads=Loads(0.0, 0.0, 0.0, -thrust * sth, 0.0, thrust * cth),
                    branch="sheared",
                )
            )
    points.sort(key=lambda pt: (pt.N, pt.branch))
    return points, thresh


def write_branch_csv(
    path: str | Path,
    points: list[BranchPoint],
    no_bifurcation: NoBifurcation | None = None,
) -> None:
    """Emit a branch sweep as CSV (17 significant digits, byte-stable)."""
    lines = []
    if no_bifurcation is not None:
        lines.append(f"# no bifurcation: {no_bifurcation}")
    lines.append(BRANCH_CSV_HEADER)
    for pt in points:
        amp = math.hypot(pt.strains.v1, pt.strains.v2)
        row = [pt.N, pt.theta, pt.strains.u3, pt.strains.v3, amp]
        lines.append(",".join(f"{x:.17g}" for x in row) + f",{pt.branch}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
