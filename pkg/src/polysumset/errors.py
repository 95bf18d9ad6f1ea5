class HypothesisNotMet(ValueError):
    """Parameters fall outside the range where a formula or theorem applies."""


class CapExceeded(RuntimeError):
    """A brute-force enumeration or expansion would exceed the configured cap."""


class CounterexampleError(AssertionError):
    """A bound failed although all of its hypotheses were met."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump
