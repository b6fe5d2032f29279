"""Exception hierarchy shared by all chaoslab modules."""


class ChaoslabError(Exception):
    """Base class for all library errors."""


class DomainError(ChaoslabError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class CapacityError(ChaoslabError):
    """A requested computation exceeds a configured size cap.

    The message always names the cap so callers know which knob to turn
    (or that they should switch to the sampling / factorized route).
    """

    def __init__(self, message: str, cap_name: str, cap_value: int, requested: int):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.requested = requested


class FormatError(ChaoslabError, ValueError):
    """A model/kernel file does not match the expected schema."""
