"""Exception types shared across the library."""


class HierMotorError(Exception):
    """Base class for library errors."""


class ConfigError(HierMotorError):
    """Invalid configuration or dimension mismatch."""


class NumericError(HierMotorError):
    """Non-finite value produced where finite math was required."""


class GenerationError(HierMotorError):
    """Reference-clip generation asked for infeasible kinematics."""


class TrainingError(HierMotorError):
    """Training diverged (NaN loss or similar)."""


class ContractViolation(HierMotorError):
    """Caller violated a documented precondition."""


class SimulationDiverged(HierMotorError):
    """Physics produced a non-finite state; carries the last valid state."""

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state
