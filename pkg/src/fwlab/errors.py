"""Exception types shared across the package."""


class GridMismatchError(ValueError):
    """Two objects that must share a grid were built on different grids."""


class UnsupportedParameterError(ValueError):
    """A parameter lies outside the supported set (e.g. an L^p exponent)."""


class DegenerateInputError(ValueError):
    """Input makes the requested quantity meaningless (e.g. a zero denominator)."""


class ResolvabilityError(ValueError):
    """A sequence index is too large for the grid's dealiased band."""

    def __init__(self, n: int, max_n: int, message: str | None = None):
        self.n = n
        self.max_n = max_n
        super().__init__(
            message
            or f"sequence index n={n} not resolvable on this grid; largest admissible n is {max_n}"
        )


class DomainError(ValueError):
    """A construction leaves its domain of validity (e.g. peak too close to the seam)."""


class BlowUpError(RuntimeError):
    """The critical-norm guard tripped during time integration."""

    def __init__(self, time_reached: float, norm: float, threshold: float):
        self.time_reached = time_reached
        self.norm = norm
        self.threshold = threshold
        super().__init__(
            f"critical norm {norm:.6g} exceeded guard threshold {threshold:.6g} "
            f"at t={time_reached:.6g}; integration aborted"
        )


class ConfigError(ValueError):
    """Configuration text failed to parse or validate; collects every error found."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("\n".join(self.problems))
