"""Director-frame kinematics and Euler-angle parameterization.

A configuration is a centerline r(s), s in [0, 1], with an attached
right-handed orthonormal director frame {d1, d2, d3}.  The Darboux vector
u drives the frame, d_k' = u x d_k, and the tangent expands as
r' = v_k d_k; the components of u and v in the director frame are the six
geometric strains.

Frames are the primary representation here.  Euler angles (phi, theta,
psi) are a chart over them,

    d3 = sin(theta) (cos(phi) g1 + sin(phi) g2) + cos(theta) g3,

with the auxiliary basis e3 = d3, e2 = -sin(phi) g1 + cos(phi) g2,
e1 = e2 x e3, and d1, d2 rotated from e1, e2 by psi.  The chart is
degenerate at theta in {0, pi} where only psi + phi (resp. psi - phi) is
meaningful; by convention phi = 0 there.

The reduced equilibrium system expresses the balance of couples in the
{e_k} basis for a terminal thrust N g3; ``reduced_residual`` evaluates its
six left-hand sides, which vanish identically on an exact solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .constitutive import Loads, Strains, _compliance, load_quad_form
from .errors import NonOrthonormalFrame
from .material import MaterialParams, nondimensionalize, validate

__all__ = [
    "EulerAngles",
    "Frame",
    "Configuration",
    "FrameLoads",
    "directors_from_euler",
    "darboux_components",
    "strains_from_euler",
    "frame_loads",
    "shear_factors",
    "reduced_residual",
    "reconstruct",
    "write_configuration_csv",
    "read_configuration_csv",
    "CSV_HEADER",
]

G1 = np.array([1.0, 0.0, 0.0])
G2 = np.array([0.0, 1.0, 0.0])
G3 = np.array([0.0, 0.0, 1.0])

_ORTHO_TOL = 1e-8

CSV_HEADER = "s,rx,ry,rz,d1x,d1y,d1z,d2x,d2y,d2z,d3x,d3y,d3z"


@dataclass(frozen=True)
class EulerAngles:
    """Angles (phi, theta, psi) in radians; theta restricted to [0, pi]."""

    phi: float
    theta: float
    psi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal director triple in the fixed basis."""

    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            v = np.array(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        m = self.matrix()
        if np.abs(m @ m.T - np.eye(3)).max() > _ORTHO_TOL:
            raise NonOrthonormalFrame("directors are not orthonormal")
        if np.abs(np.cross(self.d1, self.d2) - self.d3).max() > _ORTHO_TOL:
            raise NonOrthonormalFrame("frame is not right-handed")

    def matrix(self) -> np.ndarray:
        """Rows d1, d2, d3."""
        return np.vstack([self.d1, self.d2, self.d3])


def directors_from_euler(angles: EulerAngles) -> Frame:
    """Director frame of an Euler-angle triple."""
    sphi, cphi = math.sin(angles.phi), math.cos(angles.phi)
    sth, cth = math.sin(angles.theta), math.cos(angles.theta)
    spsi, cpsi = math.sin(angles.psi), math.cos(angles.psi)
    d3 = np.array([sth * cphi, sth * sphi, cth])
    e2 = np.array([-sphi, cphi, 0.0])
    e1 = np.array([cth * cphi, cth * sphi, -sth])
    return Frame(d1=cpsi * e1 + spsi * e2, d2=-spsi * e1 + cpsi * e2, d3=d3)


@dataclass(frozen=True)
class Configuration:
    """Uniformly sampled configuration: s grid, centerline points, directors.

    ``directors[i, k]`` is d_{k+1} at sample i. Arrays are frozen after
    validation and safe to share.
    """

    s: np.ndarray
    points: np.ndarray
    directors: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        pts = np.asarray(self.points, dtype=float)
        dirs = np.asarray(self.directors, dtype=float)
        n = s.shape[0]
        if n < 2 or s.ndim != 1:
            raise ValueError("need at least two samples")
        if pts.shape != (n, 3) or dirs.shape != (n, 3, 3):
            raise ValueError("inconsistent sample array shapes")
        if abs(s[0]) > 1e-9 or abs(s[-1] - 1.0) > 1e-9:
            raise ValueError("arclength parameter must run from 0 to 1")
        steps = np.diff(s)
        if steps.min() <= 0.0:
            raise ValueError("arclength parameter must be strictly increasing")
        h = 1.0 / (n - 1)
        if np.abs(steps - h).max() > 1e-9 * max(1.0, h):
            raise ValueError("samples must be uniformly spaced")
        gram = np.einsum("nij,nkj->nik", dirs, dirs)
        if np.abs(gram - np.eye(3)).max() > _ORTHO_TOL:
            raise NonOrthonormalFrame("a sampled frame is not orthonormal")
        if np.abs(np.cross(dirs[:, 0], dirs[:, 1]) - dirs[:, 2]).max() > _ORTHO_TOL:
            raise NonOrthonormalFrame("a sampled frame is not right-handed")
        for name, arr in (("s", s), ("points", pts), ("directors", dirs)):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def h(self) -> float:
        return 1.0 / (len(self.s) - 1)

    def frame(self, i: int) -> Frame:
        d = self.directors[i]
        return Frame(d1=d[0], d2=d[1], d3=d[2])


@dataclass(frozen=True)
class FrameLoads:
    """Couple and force components in the auxiliary {e_k} basis, plus the
    end-thrust magnitude N (so N1 = -N sin(theta), N2 = 0, N3 = N cos(theta)
    for the terminal-thrust load family)."""

    M1: float
    M2: float
    M3: float
    N1: float
    N2: float
    N3: float
    N: float


def _derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order d/ds along axis 0: central interior, one-sided ends."""
    d = np.empty_like(values)
    d[1:-1] = (values[2:] - values[:-2]) / (2.0 * h)
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    d[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return d


def darboux_components(frames: Sequence[Frame] | np.ndarray, h: float) -> np.ndarray:
    """Darboux vector components (u . d_k) of a sampled frame field.

    Uses u = (1/2) sum_k d_k x d_k' with second-order difference stencils,
    so the result carries an O(h^2) discretization error. Returns shape
    (n, 3). Raises NonOrthonormalFrame if any sample fails the tolerance.
    """
    if isinstance(frames, np.ndarray):
        dirs = np.asarray(frames, dtype=float)
    else:
        dirs = np.stack([f.matrix() for f in frames])
    if dirs.ndim != 3 or dirs.shape[1:] != (3, 3) or dirs.shape[0] < 3:
        raise ValueError("need at least three frame samples of shape (3, 3)")
    gram = np.einsum("nij,nkj->nik", dirs, dirs)
    if np.abs(gram - np.eye(3)).max() > _ORTHO_TOL:
        raise NonOrthonormalFrame("frame samples are not orthonormal")
    rates = _derivative(dirs, h)
    u = 0.5 * np.cross(dirs, rates).sum(axis=1)
    return np.einsum("ni,nki->nk", u, dirs)


def strains_from_euler(
    angles: EulerAngles,
    angle_rates: tuple[float, float, float],
    tangent_components: tuple[float, float, float],
) -> Strains:
    """Strains of an Euler-angle path.

    ``angle_rates`` are (phi', theta', psi'); the tangent components
    (v1, v2, v3) pass through unchanged:

        u1 = theta' sin(psi) - phi' sin(theta) cos(psi)
        u2 = theta' cos(psi) + phi' sin(theta) sin(psi)
        u3 = psi' + phi' cos(theta)
    """
    dphi, dtheta, dpsi = angle_rates
    sth = math.sin(angles.theta)
    spsi, cpsi = math.sin(angles.psi), math.cos(angles.psi)
    v1, v2, v3 = tangent_components
    return Strains(
        u1=dtheta * spsi - dphi * sth * cpsi,
        u2=dtheta * cpsi + dphi * sth * spsi,
        u3=dpsi + dphi * math.cos(angles.theta),
        v1=v1,
        v2=v2,
        v3=v3,
    )


def frame_loads(loads: Loads, angles: EulerAngles, thrust: float) -> FrameLoads:
    """Re-express director-frame couples in the {e_k} basis and attach the
    terminal-thrust force components."""
    spsi, cpsi = math.sin(angles.psi), math.cos(angles.psi)
    sth, cth = math.sin(angles.theta), math.cos(angles.theta)
    return FrameLoads(
        M1=loads.m1 * cpsi - loads.m2 * spsi,
        M2=loads.m1 * spsi + loads.m2 * cpsi,
        M3=loads.m3,
        N1=-thrust * sth,
        N2=0.0,
        N3=thrust * cth,
        N=thrust,
    )


def shear_factors(params: MaterialParams, loads: Loads) -> tuple[float, float]:
    """Scalar factors (u_factor, v_factor) in the normalized gauge such that
    u_mu = u_factor * m_mu and v_mu = v_factor * n_mu."""
    pn = nondimensionalize(validate(params))
    f = _compliance(pn, load_quad_form(pn, loads))
    return f / pn.alpha**2, f / pn.zeta**2


def reduced_residual(
    params: MaterialParams,
    angles: EulerAngles,
    angle_rates: tuple[float, float, float],
    loads: FrameLoads,
    load_rates: tuple[float, float, float],
    v3: float,
) -> np.ndarray:
    """Six residuals of the reduced equilibrium system, zero at a solution.

    ``angle_rates`` = (phi', theta', psi'); ``load_rates`` = (M1', M2', M3').
    Works in the normalized gauge (params are renormalized on entry):

        r1 = sin(theta) phi' + u M1
        r2 = theta' + u M2
        r3 = psi' + cos(theta) phi' - u3
        r4 = M1' - M2 cos(theta) phi' + theta' M3
        r5 = M2' + (M1 cos(theta) + M3 sin(theta)) phi'
             - N v3 sin(theta) + N^2 v cos(theta) sin(theta)
        r6 = M3'

    where u, v are the shear factors and u3 the constitutive twist of the
    load state.
    """
    pn = nondimensionalize(validate(params))
    dphi, dtheta, dpsi = angle_rates
    dM1, dM2, dM3 = load_rates
    sth, cth = math.sin(angles.theta), math.cos(angles.theta)
    # Q* only involves psi-rotation invariants, so the {e_k} components can
    # stand in for director components directly.
    director_loads = Loads(loads.M1, loads.M2, loads.M3, loads.N1, loads.N2, loads.N3)
    f = _compliance(pn, load_quad_form(pn, director_loads))
    u_fac = f / pn.alpha**2
    v_fac = f / pn.zeta**2
    u3 = f * (pn.eta**2 * loads.M3 - pn.iota * loads.N * cth) / pn.twist_stretch_det
    return np.array(
        [
            sth * dphi + u_fac * loads.M1,
            dtheta + u_fac * loads.M2,
            dpsi + cth * dphi - u3,
            dM1 - loads.M2 * cth * dphi + dtheta * loads.M3,
            dM2
            + (loads.M1 * cth + loads.M3 * sth) * dphi
            - loads.N * v3 * sth
            + loads.N**2 * v_fac * cth * sth,
            dM3,
        ]
    )


def _orthonormalize(d: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on rows d1, d2; d3 rebuilt as d1 x d2."""
    d1 = d[0] / np.linalg.norm(d[0])
    d2 = d[1] - (d[1] @ d1) * d1
    d2 /= np.linalg.norm(d2)
    return np.vstack([d1, d2, np.cross(d1, d2)])


def reconstruct(
    strain_field: Callable[[float], Strains],
    start_point: np.ndarray | Sequence[float],
    start_frame: Frame,
    grid_h: float,
) -> Configuration:
    """Integrate a strain field into a configuration on [0, 1].

    Solves r' = v_k d_k and d_k' = u x d_k with classical fourth-order
    Runge-Kutta steps (global error O(h^4)); the frame is re-orthonormalized
    after every step so |d_k| stays at 1 up to rounding. The step count is
    round(1/grid_h), so the effective spacing may differ slightly from
    ``grid_h`` when it does not divide 1.
    """
    if not 0.0 < grid_h <= 0.5:
        raise ValueError(f"grid_h must lie in (0, 0.5], got {grid_h!r}")
    n = max(2, round(1.0 / grid_h))
    s_grid = np.linspace(0.0, 1.0, n + 1)
    h = 1.0 / n

    def rhs(s: float, r: np.ndarray, d: np.ndarray):
        st = strain_field(s)
        u = st.u1 * d[0] + st.u2 * d[1] + st.u3 * d[2]
        dr = st.v1 * d[0] + st.v2 * d[1] + st.v3 * d[2]
        return dr, np.cross(u, d)

    r = np.array(start_point, dtype=float)
    d = start_frame.matrix()
    points = np.empty((n + 1, 3))
    dirs = np.empty((n + 1, 3, 3))
    points[0], dirs[0] = r, d
    for i in range(n):
        s = s_grid[i]
        k1r, k1d = rhs(s, r, d)
        k2r, k2d = rhs(s + 0.5 * h, r + 0.5 * h * k1r, d + 0.5 * h * k1d)
        k3r, k3d = rhs(s + 0.5 * h, r + 0.5 * h * k2r, d + 0.5 * h * k2d)
        k4r, k4d = rhs(s + h, r + h * k3r, d + h * k3d)
        r = r + (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
        d = _orthonormalize(d + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d))
        points[i + 1], dirs[i + 1] = r, d
    return Configuration(s=s_grid, points=points, directors=dirs)


def write_configuration_csv(config: Configuration, path: str | Path) -> None:
    """Write samples as CSV, 17 significant digits (byte-stable, round-trip safe)."""
    lines = [CSV_HEADER]
    for i in range(len(config.s)):
        row = [config.s[i], *config.points[i], *config.directors[i].ravel()]
        lines.append(",".join(f"{x:.17g}" for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_configuration_csv(path: str | Path) -> Configuration:
    """Parse a configuration CSV; raises ValueError on malformed input."""
    lines = Path(path).read_text(encoding="utf-8").strip().splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ValueError("bad or missing configuration CSV header")
    rows = []
    for ln, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 13:
            raise ValueError(f"line {ln}: expected 13 columns, got {len(parts)}")
        try:
            vals = [float(x) for x in parts]
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}") from exc
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"line {ln}: non-finite value")
        rows.append(vals)
    if len(rows) < 2:
        raise ValueError("configuration CSV needs at least two samples")
    data = np.array(rows)
    return Configuration(
        s=data[:, 0],
        points=data[:, 1:4],
        directors=data[:, 4:13].reshape(-1, 3, 3),
    )
