"""Exception types shared across the package."""


class FluxtreeError(Exception):
    """Base class for all package errors."""


class ParameterError(FluxtreeError, ValueError):
    """A physical parameter is outside its admissible domain."""


class StructuralError(FluxtreeError, ValueError):
    """A state vector or template is internally inconsistent (wrong shape, missing part)."""


class IntegrationError(FluxtreeError, RuntimeError):
    """The ODE integrator failed (step-size underflow or non-finite state).

    Carries the simulation time at which the failure occurred.
    """

    def __init__(self, message: str, t_ns: float):
        super().__init__(f"{message} (at t = {t_ns:.6g} ns)")
        self.t_ns = t_ns


class CalibrationError(FluxtreeError, ValueError):
    """A calibration input is unusable (non-monotone table, degenerate fit)."""


class TreeValidationError(FluxtreeError, ValueError):
    """A tree specification violates a structural invariant.

    `problems` is a list of (node_path, message) pairs; the string form lists them all.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "; ".join(f"{path}: {msg}" for path, msg in self.problems)
        super().__init__(lines or "invalid tree")


class ConfigError(FluxtreeError, ValueError):
    """A scenario configuration failed to parse or resolve."""
