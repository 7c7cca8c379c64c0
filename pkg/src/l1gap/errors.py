"""Exception hierarchy."""


class L1GapError(Exception):
    pass


class FieldMismatch(L1GapError, TypeError):
    """Operands live in different fields."""


class DimensionMismatch(L1GapError, ValueError):
    pass


class PresentationMismatch(L1GapError, ValueError):
    pass


class PreconditionError(L1GapError, ValueError):
    pass


class IrrationalNullSpace(L1GapError):
    """The null space has no rational basis, so no quotient lattice exists."""


class NoPositiveWitness(L1GapError):
    """The Dirichlet class landed in the null space; raise the parameter."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Inconclusive(L1GapError):
    """A search hit a configured bound. Not a statement about the mathematics."""


class BoxExceeded(Inconclusive):
    def __init__(self, needed, box_bound):
        super().__init__(f"enumeration box {needed} exceeds box_bound {box_bound}")
        self.needed = needed
        self.box_bound = box_bound


class CapExceeded(Inconclusive):
    def __init__(self, cap, witnesses=()):
        super().__init__(f"Dirichlet parameter exceeded cap {cap}")
        self.cap = cap
        self.witnesses = list(witnesses)


class ParseError(L1GapError, ValueError):
    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnknownFieldKind(ParseError):
    pass


class NonSquarefree(ParseError):
    pass


class NonPositiveWeight(ParseError):
    pass


class RaggedVectors(ParseError):
    pass
