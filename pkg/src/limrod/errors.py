"""Exception types shared across the rod model."""


class RodModelError(Exception):
    """Base class for all model-domain errors."""


class NonPositiveParameter(RodModelError):
    """A material constant that must be strictly positive is not."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"material parameter '{name}' must be > 0, got {value!r}")


class DefinitenessViolation(RodModelError):
    """beta^2*eta^2 - iota^2 <= 0: the twist/stretch coefficient block is singular."""


class StrainOutOfRange(RodModelError):
    """Strain state lies outside the constitutive domain (quadratic form >= 1)."""


class NonOrthonormalFrame(RodModelError):
    """A director frame fails orthonormality beyond tolerance."""


class BelowThreshold(RodModelError):
    """End thrust does not exceed the shearing bifurcation threshold."""


class NoBifurcationError(RodModelError):
    """The material constants admit no sheared tensile branch."""

    def __init__(self, condition: str):
        self.condition = condition
        super().__init__(f"no shearing bifurcation: {condition}")


class DegenerateCouple(RodModelError):
    """The helical family needs a nonzero transverse couple component."""
