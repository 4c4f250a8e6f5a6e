"""Exception types shared by the library modules and the command line front end."""


class DomainError(ValueError):
    """A physically invalid input: the requested point lies outside the
    validity domain of a dilation factor or emergent-time integrand
    (inside a horizon, at or above light speed, beyond the Hubble radius,
    nonpositive scale factor, spacelike worldline segment)."""


class UndefinedConditionalStateError(DomainError):
    """Conditioning on a clock reading whose projection has numerically zero
    norm.  The conditional state carries no information and no internal time
    parameter can be defined from it (the photon-like degenerate case)."""


class ConfigError(ValueError):
    """A scenario file failed strict validation (syntax error, unknown key,
    missing key, or a value of the wrong type or range)."""
