"""Exception types raised across the package."""


class DiluteError(Exception):
    """Base class for all package errors."""


class DegenerateParams(DiluteError, ValueError):
    """A denominator of the algebra or face-operator formulas vanishes."""


class SymbolOutOfRange(DiluteError, IndexError):
    pass


class SizeMismatch(DiluteError, ValueError):
    pass


class SizeTooLarge(DiluteError, ValueError):
    pass


class UnsupportedFlavor(DiluteError, ValueError):
    pass


class CubicViolation(DiluteError, ValueError):
    """Input braid does not satisfy the dBWM cubic at the given parameters."""


class RankError(DiluteError, ValueError):
    """Monoid generator recovered from a braid is not rank one."""


class CatalogViolation(DiluteError):
    """A rebuilt representation fails some relations of the catalog.

    The failing relation names and the full report are kept on the
    exception so a caller can inspect per-relation residuals.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotConverged(DiluteError, RuntimeError):
    pass
