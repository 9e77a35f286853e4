# koszul_derham/errors.py
from typing import Optional


class KoszulDerhamError(Exception):
    """
    Base class for every error the engine raises on purpose.

    `reason` is a stable slug for the diagnostic line, `exit_code` is what the
    CLI returns when the error escapes a command.
    """
    reason = "error"
    exit_code = 1

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        self.message = message
        if reason is not None:
            self.reason = reason

    def diagnostic(self) -> str:
        detail = self.message.replace('"', "'")
        return f'error reason={self.reason} detail="{detail}"'


class InputError(KoszulDerhamError):
    reason = "input_error"
    exit_code = 2


class PolynomialSyntaxError(InputError):
    reason = "syntax_error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position

    def diagnostic(self) -> str:
        detail = self.message.replace('"', "'")
        return f'error reason={self.reason} position={self.position} detail="{detail}"'


class UnknownIdentifierError(PolynomialSyntaxError):
    reason = "unknown_identifier"


class NotHomogeneousError(InputError):
    reason = "not_homogeneous"


class ConfigurationError(KoszulDerhamError):
    reason = "configuration_error"
    exit_code = 2


class PreconditionError(KoszulDerhamError):
    reason = "precondition_failed"
    exit_code = 2


class DegreeCapRequiredError(KoszulDerhamError):
    reason = "degree_cap_required"
    exit_code = 2


class AutoCapUnavailableError(KoszulDerhamError):
    reason = "auto_cap_unavailable"
    exit_code = 2


class NotStabilizedError(KoszulDerhamError):
    reason = "not_stabilized"
    exit_code = 3


class HypothesisNotMetError(KoszulDerhamError):
    reason = "hypothesis_not_met"
    exit_code = 4


class InternalConsistencyError(KoszulDerhamError):
    reason = "internal_consistency"
    exit_code = 1
