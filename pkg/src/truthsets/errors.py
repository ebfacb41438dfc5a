"""Exception types shared across the package."""


class TruthSetError(Exception):
    """Base class for all package errors."""


class ParseError(TruthSetError):
    """Bad concrete syntax. Carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnsupportedConnectiveError(TruthSetError):
    """A formula uses a connective the targeted semantics does not interpret."""


class ContextMismatchError(TruthSetError):
    """Truth sets from different signatures/models/valuations were combined."""


class ModelError(TruthSetError):
    """A Kripke model violates the poset axioms or valuation persistence."""


class CapExceededError(TruthSetError):
    """Saturation hit the family-size cap before reaching a fixpoint."""

    def __init__(self, cap: int):
        super().__init__(f"closure exceeds the family cap of {cap} sets")
        self.cap = cap


class ReferenceLabelingError(TruthSetError):
    """A reference labeling cannot be applied consistently to a family."""
