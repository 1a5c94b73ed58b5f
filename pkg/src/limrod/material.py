"""Material constants of the strain-limiting rod model.

The model is specified by seven constants plus a reference length:

    alpha, beta   bending / twisting coefficients        [length]
    gamma         overall force scale                    [force]
    zeta, eta     shearing / dilatational coefficients   [dimensionless]
    iota          twist-stretch coupling (chirality)     [signed length]
    p             limiting exponent                      [dimensionless]
    ref_length    reference (undeformed) rod length L    [length]

To leading order in the strains the constitutive response is linear with
moduli gamma*alpha^2 (bending), gamma*beta^2 (twisting), gamma*zeta^2
(shearing), gamma*eta^2 (dilatational) and gamma*iota (twist-stretch).
The sign of iota selects the handedness of the rod: iota > 0 models a
right-handed rod that unwinds under tension.

Admissibility requires all constants positive (iota may have either sign)
together with beta^2*eta^2 - iota^2 > 0, which makes the coupled
twist/stretch block of the strain quadratic form positive definite.

The closed-form equilibrium families are all written in the normalized
gauge ref_length = 1, gamma = 1; ``nondimensionalize`` rescales an
arbitrary parameter set into that gauge.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import DefinitenessViolation, NonPositiveParameter

__all__ = [
    "MaterialParams",
    "DerivedModuli",
    "validate",
    "nondimensionalize",
    "orientation_weak_ok",
    "orientation_strong_ok",
    "load_params",
]

_POSITIVE_FIELDS = ("alpha", "beta", "gamma", "zeta", "eta", "p", "ref_length")


@dataclass(frozen=True)
class MaterialParams:
    alpha: float
    beta: float
    gamma: float
    zeta: float
    eta: float
    iota: float
    p: float
    ref_length: float = 1.0

    @property
    def twist_stretch_det(self) -> float:
        """Determinant beta^2*eta^2 - iota^2 of the twist/stretch block."""
        return self.beta**2 * self.eta**2 - self.iota**2

    @property
    def is_normalized(self) -> bool:
        return self.ref_length == 1.0 and self.gamma == 1.0

    def derived_moduli(self) -> "DerivedModuli":
        """Small-strain moduli implied by the constants."""
        g = self.gamma
        return DerivedModuli(
            bending=g * self.alpha**2,
            twisting=g * self.beta**2,
            shearing=g * self.zeta**2,
            dilatational=g * self.eta**2,
            twist_stretch=g * self.iota,
        )


@dataclass(frozen=True)
class DerivedModuli:
    """Leading-order material moduli (force times appropriate length powers)."""

    bending: float
    twisting: float
    shearing: float
    dilatational: float
    twist_stretch: float


def validate(params: MaterialParams) -> MaterialParams:
    """Check admissibility and return the parameter set unchanged.

    Raises NonPositiveParameter if any of alpha, beta, gamma, zeta, eta, p,
    ref_length fails strict positivity (iota may take any finite sign), and
    DefinitenessViolation if beta^2*eta^2 - iota^2 <= 0.
    """
    for name in _POSITIVE_FIELDS:
        value = getattr(params, name)
        if not (math.isfinite(value) and value > 0.0):
            raise NonPositiveParameter(name, value)
    if not math.isfinite(params.iota):
        raise NonPositiveParameter("iota", params.iota)
    det = params.twist_stretch_det
    if not det > 0.0:
        raise DefinitenessViolation(
            f"beta^2*eta^2 - iota^2 = {det!r} must be > 0"
        )
    return params


def nondimensionalize(params: MaterialParams) -> MaterialParams:
    """Rescale to the gauge ref_length = 1, gamma = 1.

    Lengths (alpha, beta, iota) are divided by ref_length; gamma by itself.
    zeta, eta and p are dimensionless and unchanged. Idempotent.
    """
    validate(params)
    if params.is_normalized:
        return params
    L = params.ref_length
    return replace(
        params,
        alpha=params.alpha / L,
        beta=params.beta / L,
        iota=params.iota / L,
        gamma=1.0,
        ref_length=1.0,
    )


def orientation_weak_ok(params: MaterialParams) -> bool:
    """True iff the dilatation stays positive for every admissible load.

    The bound on |v3 - 1| is beta/sqrt(beta^2*eta^2 - iota^2); the rod can
    never invert its tangent orientation when that bound is below one,
    i.e. when 1 + iota^2/beta^2 < eta^2.
    """
    validate(params)
    return 1.0 + params.iota**2 / params.beta**2 < params.eta**2


def orientation_strong_ok(params: MaterialParams, cross_section_radius: float) -> bool:
    """True iff a circular cross section of the given radius cannot locally
    self-penetrate at any admissible strain state.

    Requires cross_section_radius < alpha * (1 - beta/sqrt(beta^2*eta^2 - iota^2));
    the right side is nonpositive whenever the weak predicate fails.
    """
    validate(params)
    if not cross_section_radius > 0.0:
        raise ValueError(f"cross_section_radius must be > 0, got {cross_section_radius!r}")
    bound = params.alpha * (1.0 - params.beta / math.sqrt(params.twist_stretch_det))
    return cross_section_radius < bound


def _reject_nonfinite(token: str) -> float:
    raise ValueError(f"non-finite number {token!r} not allowed in parameter file")


def load_params(path: str | Path) -> MaterialParams:
    """Read a parameter JSON file.

    Expected keys: alpha, beta, gamma, zeta, eta, iota, p and optionally
    ref_length (default 1.0). All values must be finite numbers; NaN/Inf
    and unknown keys are rejected. The returned set is *not* validated for
    admissibility; call ``validate`` for that.
    """
    text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text, parse_constant=_reject_nonfinite)
    if not isinstance(raw, dict):
        raise ValueError("parameter file must contain a JSON object")
    required = {"alpha", "beta", "gamma", "zeta", "eta", "iota", "p"}
    allowed = required | {"ref_length"}
    unknown = set(raw) - allowed
    if unknown:
        raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    missing = required - set(raw)
    if missing:
        raise ValueError(f"missing parameter keys: {sorted(missing)}")
    values: dict[str, float] = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"parameter {key!r} must be a number, got {value!r}")
        if not math.isfinite(value):
            raise ValueError(f"parameter {key!r} must be finite, got {value!r}")
        values[key] = float(value)
    values.setdefault("ref_length", 1.0)
    return MaterialParams(**values)
