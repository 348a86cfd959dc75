"""Exception types shared by the package."""


class TwistedCliffordError(Exception):
    pass


class StructuralError(TwistedCliffordError, ValueError):
    """Mismatched shapes, ranks or groups."""


class CapacityError(TwistedCliffordError, ValueError):
    """Input too large for the requested exhaustive computation."""


class DomainError(TwistedCliffordError, ValueError):
    """Argument outside the domain of an operation."""


class ValidationError(TwistedCliffordError, ValueError):
    """Input data failed a structural or algebraic check."""


class UnsupportedInputError(TwistedCliffordError, ValueError):
    """Input lies outside the family an operation is defined for."""


class ParseError(TwistedCliffordError, ValueError):
    pass
