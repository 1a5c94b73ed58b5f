"""Constitutive core: exact maps between loads and strains.

State variables, always ordered (u1, u2, u3, v1, v2, v3):

    u1, u2  flexural strains            [1/length]
    u3      torsional strain (twist)    [1/length]
    v1, v2  shear strains               [dimensionless]
    v3      dilatation strain           [dimensionless, reference value 1]

and the work-conjugate loads (m1, m2, m3, n1, n2, n3): bending couples,
twisting couple, shear forces, tension, all in the director frame.

Two positive-definite quadratic forms drive everything.  On strain
deviations (u, v - e3):

    Q  = alpha^2 (u1^2 + u2^2) + beta^2 u3^2 + zeta^2 (v1^2 + v2^2)
         + eta^2 (v3 - 1)^2 + 2 iota u3 (v3 - 1)

and its convex dual on loads:

    Q* = (m1^2 + m2^2)/alpha^2 + (n1^2 + n2^2)/zeta^2
         + [eta^2 m3^2 + beta^2 n3^2 - 2 iota m3 n3] / (beta^2 eta^2 - iota^2)

The forward map scales the Q*-gradient by the saturating factor
F = (gamma^p + Q*^{p/2})^{-1/p}; it is total on all finite loads and its
output always satisfies Q < 1, which caps every strain component at a
finite bound no matter how large the loads grow.  The inverse map scales
the Q-gradient by G = gamma (1 - Q^{p/2})^{-1/p} and is defined only on
Q < 1.  Both derive from potentials (stored / complementary energy), so
the 6x6 stored-energy Hessian is symmetric, and it is positive definite
throughout the admissible range.

On the wire, Strains and Loads are flat JSON arrays of six numbers in the
field order above (``as_array``/``from_array``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import integrate

from .errors import StrainOutOfRange
from .material import MaterialParams, validate

__all__ = [
    "Strains",
    "Loads",
    "StrainBounds",
    "strain_quad_form",
    "load_quad_form",
    "strains_from_loads",
    "strains_from_loads_batch",
    "loads_from_strains",
    "stored_energy",
    "complementary_energy",
    "stored_energy_hessian",
    "strain_bounds",
    "symmetry_transform",
]

_EPS = math.ulp(1.0)

# The standalone saturating-factor helper switches to log-space evaluation
# beyond this point so extreme load form values never overflow Q*^{p/2}.
_LOG_SPACE_QSTAR = 1e100


@dataclass(frozen=True)
class Strains:
    u1: float
    u2: float
    u3: float
    v1: float
    v2: float
    v3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.u3, self.v1, self.v2, self.v3])

    @classmethod
    def from_array(cls, a: Iterable[float]) -> "Strains":
        u1, u2, u3, v1, v2, v3 = (float(x) for x in a)
        return cls(u1, u2, u3, v1, v2, v3)

    @classmethod
    def reference(cls) -> "Strains":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Loads:
    m1: float
    m2: float
    m3: float
    n1: float
    n2: float
    n3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.m3, self.n1, self.n2, self.n3])

    @classmethod
    def from_array(cls, a: Iterable[float]) -> "Loads":
        m1, m2, m3, n1, n2, n3 = (float(x) for x in a)
        return cls(m1, m2, m3, n1, n2, n3)

    @classmethod
    def zero(cls) -> "Loads":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


class StrainBounds(tuple):
    """Open upper bounds on (u1^2+u2^2)^{1/2}, |u3|, (v1^2+v2^2)^{1/2}, |v3-1|."""

    __slots__ = ()

    def __new__(cls, flexure, twist, shear, dilatation):
        return super().__new__(cls, (flexure, twist, shear, dilatation))

    flexure = property(lambda self: self[0])
    twist = property(lambda self: self[1])
    shear = property(lambda self: self[2])
    dilatation = property(lambda self: self[3])


def _strain_form(params: MaterialParams, u1, u2, u3, v1, v2, dv3):
    # shared by the scalar/batch paths so both see bit-identical values
    return (
        params.alpha**2 * (u1 * u1 + u2 * u2)
        + params.beta**2 * (u3 * u3)
        + params.zeta**2 * (v1 * v1 + v2 * v2)
        + params.eta**2 * (dv3 * dv3)
        + 2.0 * params.iota * u3 * dv3
    )


def _load_form(params: MaterialParams, m1, m2, m3, n1, n2, n3):
    det = params.twist_stretch_det
    return (
        (m1 * m1 + m2 * m2) / params.alpha**2
        + (n1 * n1 + n2 * n2) / params.zeta**2
        + (params.eta**2 * (m3 * m3) + params.beta**2 * (n3 * n3) - 2.0 * params.iota * m3 * n3)
        / det
    )


def strain_quad_form(params: MaterialParams, strains: Strains) -> float:
    """Quadratic form Q on the strain deviation from the reference state."""
    validate(params)
    return _strain_form(
        params, strains.u1, strains.u2, strains.u3, strains.v1, strains.v2, strains.v3 - 1.0
    )


def load_quad_form(params: MaterialParams, loads: Loads) -> float:
    """Dual quadratic form Q* on the loads; overflows to inf (rather than
    raising) for load magnitudes beyond roughly 1e150."""
    validate(params)
    return _load_form(params, loads.m1, loads.m2, loads.m3, loads.n1, loads.n2, loads.n3)


def _compliance(params: MaterialParams, qstar: float) -> float:
    """Saturating load-to-strain factor F = (gamma^p + Q*^{p/2})^{-1/p}."""
    p = params.p
    if qstar > _LOG_SPACE_QSTAR:
        # gamma^p is below double precision next to Q*^{p/2}; log-space keeps
        # the evaluation finite for arbitrarily large loads.
        log_g = p * math.log(params.gamma)
        log_q = 0.5 * p * math.log(qstar)
        hi, lo = max(log_g, log_q), min(log_g, log_q)
        return math.exp(-(hi + math.log1p(math.exp(lo - hi))) / p)
    return (params.gamma**p + qstar ** (0.5 * p)) ** (-1.0 / p)


def _one_minus_qp(q: float, p: float) -> float:
    """1 - Q^{p/2}, evaluated without cancellation loss near Q = 1."""
    if q <= 0.0:
        return 1.0
    if q > 0.5:
        return -math.expm1(0.5 * p * math.log(q))
    return 1.0 - q ** (0.5 * p)


def _interior_margin(params: MaterialParams) -> float:
    """Width of the boundary band inside which forward-map outputs get
    projected inward. Must dominate the float wobble of re-evaluating Q on
    the stored state, which scales with the form weights and the size of
    the limiting bounds."""
    root = math.sqrt(params.twist_stretch_det)
    b_dil = params.beta / root
    b_twist = params.eta / root
    grad = (params.eta**2 * b_dil + abs(params.iota) * b_twist) * (1.0 + b_dil)
    weight = max(
        params.alpha**2, params.beta**2, params.zeta**2, params.eta**2, abs(params.iota)
    )
    return 64.0 * _EPS * (1.0 + weight + grad)


def strains_from_loads(params: MaterialParams, loads: Loads) -> Strains:
    """Forward constitutive map; total on all finite loads.

    With F = (gamma^p + Q*^{p/2})^{-1/p} and det = beta^2 eta^2 - iota^2:

        u_mu   = F m_mu / alpha^2
        u3     = F (eta^2 m3 - iota n3) / det
        v_mu   = F n_mu / zeta^2
        v3 - 1 = F (-iota m3 + beta^2 n3) / det

    Loads are prescaled by an exact power of two, so Q*^{p/2} never
    overflows however large the components. The output satisfies
    Q(u, v) < 1 with every component strictly inside its limiting bound,
    at float level: deep in saturation, where rounding alone would park
    the state on the boundary, the deviation is projected inward by a few
    parts in 1e15.
    """
    validate(params)
    dev = _forward_dev(
        params, loads.m1, loads.m2, loads.m3, loads.n1, loads.n2, loads.n3
    )
    margin = _interior_margin(params)
    for _ in range(4):
        dv3 = (1.0 + dev[5]) - 1.0
        q = _strain_form(params, dev[0], dev[1], dev[2], dev[3], dev[4], dv3)
        if q <= 1.0 - margin:
            break
        dev *= math.sqrt((1.0 - 2.0 * margin) / q)
    return Strains(
        u1=float(dev[0]),
        u2=float(dev[1]),
        u3=float(dev[2]),
        v1=float(dev[3]),
        v2=float(dev[4]),
        v3=float(1.0 + dev[5]),
    )


def _forward_dev(params: MaterialParams, m1, m2, m3, n1, n2, n3) -> np.ndarray:
    p = params.p
    c = max(1.0, abs(m1), abs(m2), abs(m3), abs(n1), abs(n2), abs(n3))
    if c > 1.0:
        # power-of-two scaling is exact, so this only rewrites the exponents;
        # gamma/c may underflow for astronomic loads, which is the correct limit
        c = math.ldexp(1.0, math.frexp(c)[1])
        m1, m2, m3, n1, n2, n3 = m1 / c, m2 / c, m3 / c, n1 / c, n2 / c, n3 / c
    qs = _load_form(params, m1, m2, m3, n1, n2, n3)
    f = ((params.gamma / c) ** p + qs ** (0.5 * p)) ** (-1.0 / p)
    det = params.twist_stretch_det
    return np.array(
        [
            f * m1 / params.alpha**2,
            f * m2 / params.alpha**2,
            f * (params.eta**2 * m3 - params.iota * n3) / det,
            f * n1 / params.zeta**2,
            f * n2 / params.zeta**2,
            f * (-params.iota * m3 + params.beta**2 * n3) / det,
        ]
    )


def strains_from_loads_batch(params: MaterialParams, loads: np.ndarray) -> np.ndarray:
    """Vectorized forward map for load sweeps.

    ``loads`` has shape (n, 6) with columns (m1, m2, m3, n1, n2, n3); the
    result has shape (n, 6) with columns (u1, u2, u3, v1, v2, v3).
    Matches ``strains_from_loads`` row by row up to a few ulps (vectorized
    powers round differently from libm).
    """
    validate(params)
    loads = np.asarray(loads, dtype=float)
    p = params.p
    det = params.twist_stretch_det
    c = np.maximum(1.0, np.abs(loads).max(axis=1))
    _, exponents = np.frexp(c)
    c = np.ldexp(1.0, np.where(c > 1.0, exponents, 0))
    m1, m2, m3, n1, n2, n3 = (loads / c[:, None]).T
    qs = _load_form(params, m1, m2, m3, n1, n2, n3)
    f = ((params.gamma / c) ** p + qs ** (0.5 * p)) ** (-1.0 / p)
    dev = np.empty_like(loads)
    dev[:, 0] = f * m1 / params.alpha**2
    dev[:, 1] = f * m2 / params.alpha**2
    dev[:, 2] = f * (params.eta**2 * m3 - params.iota * n3) / det
    dev[:, 3] = f * n1 / params.zeta**2
    dev[:, 4] = f * n2 / params.zeta**2
    dev[:, 5] = f * (-params.iota * m3 + params.beta**2 * n3) / det
    margin = _interior_margin(params)
    for _ in range(4):
        dv3 = (1.0 + dev[:, 5]) - 1.0
        q = _strain_form(params, dev[:, 0], dev[:, 1], dev[:, 2], dev[:, 3], dev[:, 4], dv3)
        saturated = q > 1.0 - margin
        if not saturated.any():
            break
        scale = np.sqrt((1.0 - 2.0 * margin) / q[saturated])
        dev[saturated] *= scale[:, None]
    dev[:, 5] += 1.0
    return dev


def loads_from_strains(params: MaterialParams, strains: Strains) -> Loads:
    """Inverse constitutive map, defined on Q(u, v) < 1.

    With G = gamma (1 - Q^{p/2})^{-1/p}:

        m_mu = G alpha^2 u_mu
        m3   = G (beta^2 u3 + iota (v3 - 1))
        n_mu = G zeta^2 v_mu
        n3   = G (iota u3 + eta^2 (v3 - 1))
    """
    validate(params)
    q = strain_quad_form(params, strains)
    if q >= 1.0:
        raise StrainOutOfRange(f"Q(u, v) = {q!r} >= 1")
    G = params.gamma * _one_minus_qp(q, params.p) ** (-1.0 / params.p)
    dv3 = strains.v3 - 1.0
    return Loads(
        m1=G * params.alpha**2 * strains.u1,
        m2=G * params.alpha**2 * strains.u2,
        m3=G * (params.beta**2 * strains.u3 + params.iota * dv3),
        n1=G * params.zeta**2 * strains.v1,
        n2=G * params.zeta**2 * strains.v2,
        n3=G * (params.iota * strains.u3 + params.eta**2 * dv3),
    )


def _stored_integrand(t: float, p: float) -> float:
    return _one_minus_qp(t, p) ** (-1.0 / p)


def _stored_tail(p: float, a: float, q: float) -> float:
    """Stored-energy integrand over the sliver [a, q], q < 1.

    For p > 1 the substitution w = (1 - t^{p/2})^{(p-1)/p} flattens the
    near-boundary growth (the transformed integrand is constant up to the
    sliver's 1e-8 relative width), so a two-point Gauss rule is exact to
    rounding however close q sits to 1. For p <= 1 the sliver is benign
    whenever the value itself is finite at working precision; a Simpson
    step suffices (p = 1 has a closed form anyway).
    """
    if p <= 1.0:
        mid = 0.5 * (a + q)
        return (q - a) / 6.0 * (
            _stored_integrand(a, p) + 4.0 * _stored_integrand(mid, p) + _stored_integrand(q, p)
        )
    r = (p - 1.0) / p
    w_hi = _one_minus_qp(a, p) ** r
    w_lo = _one_minus_qp(q, p) ** r

    def flat(w: float) -> float:
        t = (1.0 - w ** (1.0 / r)) ** (2.0 / p)
        return t ** (1.0 - 0.5 * p)

    half = 0.5 * (w_hi - w_lo)
    mid = 0.5 * (w_hi + w_lo)
    off = half / math.sqrt(3.0)
    return (2.0 / (p - 1.0)) * half * (flat(mid - off) + flat(mid + off))


def _quad_split(p: float, upper: float) -> float:
    """Adaptive quadrature of the stored-energy integrand on [0, upper],
    with the last 1e-8 sliver handled separately (the integrand steepens
    toward the strain-limit boundary)."""
    a = upper * (1.0 - 1e-8)
    main, _ = integrate.quad(
        lambda t: _stored_integrand(t, p), 0.0, a, epsabs=1e-13, epsrel=1e-13, limit=200
    )
    return main + _stored_tail(p, a, upper)


def stored_energy(params: MaterialParams, strains: Strains) -> float:
    """Stored energy W = (gamma/2) * integral_0^Q (1 - t^{p/2})^{-1/p} dt.

    Zero at the reference state; its strain gradient is ``loads_from_strains``.
    Closed forms are used for p = 1 and p = 2; other exponents fall back to
    adaptive quadrature (absolute tolerance 1e-12).
    """
    validate(params)
    q = strain_quad_form(params, strains)
    if q >= 1.0:
        raise StrainOutOfRange(f"Q(u, v) = {q!r} >= 1")
    if q == 0.0:
        return 0.0
    g, p = params.gamma, params.p
    if p == 2.0:
        return g * (1.0 - math.sqrt(1.0 - q))
    if p == 1.0:
        rt = math.sqrt(q)
        return g * (-rt - math.log1p(-rt))
    return 0.5 * g * _quad_split(p, q)


def complementary_energy(params: MaterialParams, loads: Loads) -> float:
    """Complementary energy W* = (1/2) * integral_0^{Q*} (gamma^p + t^{p/2})^{-1/p} dt.

    Its load gradient reproduces the forward map (with the v3 slot shifted
    by -1). Closed forms for p = 1 and p = 2; otherwise quadrature after
    the substitution t = tau^2, which keeps the integrand bounded even for
    very large Q*.
    """
    validate(params)
    qstar = load_quad_form(params, loads)
    if qstar == 0.0:
        return 0.0
    g, p = params.gamma, params.p
    if p == 2.0:
        return math.sqrt(g**2 + qstar) - g
    if p == 1.0:
        rt = math.sqrt(qstar)
        return rt - g * math.log1p(rt / g)
    value, _ = integrate.quad(
        lambda tau: tau * (g**p + tau**p) ** (-1.0 / p),
        0.0,
        math.sqrt(qstar),
        epsabs=1e-12,
        epsrel=1e-12,
        limit=200,
    )
    return value


def _form_matrix(params: MaterialParams) -> np.ndarray:
    """Constant symmetric matrix of Q as a form on (u, v - e3)."""
    m = np.zeros((6, 6))
    m[0, 0] = m[1, 1] = params.alpha**2
    m[2, 2] = params.beta**2
    m[3, 3] = m[4, 4] = params.zeta**2
    m[5, 5] = params.eta**2
    m[2, 5] = m[5, 2] = params.iota
    return m


def stored_energy_hessian(params: MaterialParams, strains: Strains) -> np.ndarray:
    """6x6 Hessian of W in the order (u1, u2, u3, v1, v2, v3).

    With s = 1 - Q^{p/2}, M the constant form matrix of Q and
    w = M (u, v - e3):

        D^2 W = gamma * s^{-1/p-1} * (s M + Q^{p/2-1} w w^T)

    Symmetric, and positive definite on Q < 1. As Q -> 0 the rank-one term
    vanishes (for any p > 0), so the reference-state value is gamma * M;
    that limit is returned exactly for Q < 1e-14.
    """
    validate(params)
    q = strain_quad_form(params, strains)
    if q >= 1.0:
        raise StrainOutOfRange(f"Q(u, v) = {q!r} >= 1")
    m = _form_matrix(params)
    if q < 1e-14:
        return params.gamma * m
    p = params.p
    dev = strains.as_array()
    dev[5] -= 1.0
    w = m @ dev
    s = _one_minus_qp(q, p)
    return params.gamma * s ** (-1.0 / p - 1.0) * (s * m + q ** (0.5 * p - 1.0) * np.outer(w, w))


def strain_bounds(params: MaterialParams) -> StrainBounds:
    """Open bounds that forward-map outputs can approach but never attain."""
    validate(params)
    root = math.sqrt(params.twist_stretch_det)
    return StrainBounds(
        flexure=1.0 / params.alpha,
        twist=params.eta / root,
        shear=1.0 / params.zeta,
        dilatation=params.beta / root,
    )


def symmetry_transform(strains: Strains, kind: str, angle: float = 0.0) -> Strains:
    """Apply a transverse symmetry action to a strain state.

    The group acts on the strain deviation (u, v - e3):

        kind="rotation"      rotate both u and the deviation by ``angle``
                             about the rod axis (energy-invariant always)
        kind="flip"          (u1, -u2, u3), (v1, -v2, v3)
                             (energy-invariant always)
        kind="flip_reflect"  (u1, -u2, u3), deviation (-v1, v2, -(v3-1));
                             energy-invariant iff iota == 0

    For "rotation" and "flip" the action on the deviation coincides with
    the action on the raw tangent components, because both matrices fix e3.
    """
    u = np.array([strains.u1, strains.u2, strains.u3])
    dv = np.array([strains.v1, strains.v2, strains.v3 - 1.0])
    if kind == "rotation":
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
        u, dv = rot @ u, rot @ dv
    elif kind == "flip":
        flip = np.array([1.0, -1.0, 1.0])
        u, dv = flip * u, flip * dv
    elif kind == "flip_reflect":
        u = np.array([1.0, -1.0, 1.0]) * u
        dv = np.array([-1.0, 1.0, -1.0]) * dv
    else:
        raise ValueError(f"unknown symmetry kind {kind!r}")
    return Strains(
        float(u[0]), float(u[1]), float(u[2]), float(dv[0]), float(dv[1]), float(1.0 + dv[2])
    )
