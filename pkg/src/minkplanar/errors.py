"""Exception types shared across the package."""


class MkpError(Exception):
    """Base class for all library errors."""


class DrawingFormatError(MkpError):
    """Raised when a drawing file cannot be parsed or fails validation.

    Carries a list of (line_number, message) pairs; line_number is None for
    errors that are not tied to a single line.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "; ".join(
            f"line {ln}: {msg}" if ln is not None else msg for ln, msg in self.problems
        )
        super().__init__(lines)


class NonSphericalError(MkpError):
    """The rotation/crossing data does not describe a drawing on the sphere."""

    def __init__(self, euler_characteristic):
        self.euler_characteristic = euler_characteristic
        super().__init__(
            f"non-spherical: V - E + F = {euler_characteristic}, expected 2"
        )


class PreconditionError(MkpError):
    """An operation was called on a drawing that violates its precondition."""


class ChargeIdentityError(MkpError):
    """Total initial charge differs from 4n - 8 (indicates a planarization bug)."""


class CyclicChannelError(MkpError):
    """A demand path revisited a (face, entering-edge) pair."""


class CertificateError(MkpError):
    """A discharging certificate is invalid (C1 fails somewhere)."""


class AugmentationStuckError(MkpError):
    """Neither augmentation step applies but a red face of degree >= 4 remains."""


class DegenerateGeometryError(MkpError):
    """Straight-line input is degenerate (overlaps, triple points, touching)."""


class UnknownAssetError(MkpError):
    """Requested bundled asset does not exist."""
