"""Exception types shared across the package."""


class HeightGuardError(ArithmeticError):
    """An iterate grew past the configured numerator+denominator bit budget."""

    def __init__(self, step: int, bits: int, limit: int):
        super().__init__(f"iterate {step} has {bits} bits (limit {limit})")
        self.step = step
        self.bits = bits
        self.limit = limit


class DegenerateParameterError(ValueError):
    """A family or construction was asked for an excluded parameter value."""


class InternalConsistencyError(RuntimeError):
    """A constructed object failed its own re-verification.  Always a bug."""


class NotOnCurveError(ValueError):
    pass


class SingularCurveError(ValueError):
    pass


class UnsupportedQuarticError(ValueError):
    """No usable rational base point could be arranged for a quartic model."""


class ExceptionalPointError(ValueError):
    """A birational map was evaluated on its exceptional locus."""
