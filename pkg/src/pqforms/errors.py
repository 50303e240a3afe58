"""Exception types shared across the package."""


class HypothesisError(ValueError):
    """An input violates a hypothesis of the theorem being applied."""


class NotPrimeError(HypothesisError):
    pass


class EvenPrimeError(HypothesisError):
    pass


class NotDistinctError(HypothesisError):
    pass


class DividesNError(HypothesisError):
    pass


class DiscriminantDivisorError(HypothesisError):
    pass


class ConsistencyError(RuntimeError):
    """An internal check failed: group axioms, witness equations, sweep agreement."""
