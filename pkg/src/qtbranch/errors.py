"""Exception types shared across the package."""


class QtBranchError(Exception):
    """Base class for all library errors."""


class PoleError(QtBranchError):
    """A substitution or limit hit a pole of the rational function."""


class CutoffError(QtBranchError):
    """A requested coefficient lies outside the truncation window."""


class GroupSizeError(QtBranchError):
    """A p-group exceeds the enumeration feasibility bound."""


class ExpansionError(QtBranchError):
    """A polynomial is not expressible in the requested basis."""


class InvalidInput(QtBranchError):
    """Malformed partition, signature, pattern, or chain."""
