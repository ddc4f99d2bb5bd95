"""
Exceptions raised by the resolution library.

Library code raises these; only the command-line front end turns them into
`[Error]` lines and exit codes.
"""


class GorensteinError(Exception):
    """Base class for every error raised by this package."""


class InputError(GorensteinError):
    """Malformed input: bad JSON, wrong-degree monomial, ring mismatch, n < 2."""


class DegreeError(GorensteinError):
    """A contraction or pairing was asked for with incompatible degrees."""


class ShapeError(GorensteinError):
    """Matrix shapes do not fit the requested operation."""


class CapacityError(GorensteinError):
    """Generic (symbolic) work requested beyond the supported size."""


class DegenerateInverseSystem(GorensteinError):
    """The specialized determinant vanishes, so no Gorenstein-linear resolution exists."""

    def __init__(self, n: int, message: str = None):
        self.n = n
        super().__init__(message or f"catalecticant determinant is 0 (n={n}); "
                                    "ann(Phi) has no Gorenstein-linear resolution")
