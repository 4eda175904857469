import sys
import logging
from functools import wraps
from typing import Any, Callable

from pydantic import ValidationError

from app.schemas import ErrorResponse

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class AppError(Exception):
    """Custom application error class"""
    def __init__(self, message: str, exit_code: int = EXIT_NUMERICAL, detail: Any = None):
        self.message = message
        self.exit_code = exit_code
        self.detail = detail
        super().__init__(self.message)


class ValidationFailure(AppError):
    """Input or configuration rejected before any computation"""
    def __init__(self, message: str, detail: Any = None):
        super().__init__(message, EXIT_VALIDATION, detail)


class DomainError(ValidationFailure):
    """Argument outside the declared domain of an operation"""


class RegimeError(ValidationFailure):
    """Level above the barrier, or no classically forbidden region"""


class NumericalError(AppError):
    """A numerical engine failed to reach its tolerance"""
    def __init__(self, message: str, estimate: Any = None, achieved: Any = None, detail: Any = None):
        self.estimate = estimate
        self.achieved = achieved
        if detail is None:
            detail = {"estimate": estimate, "achieved": achieved}
        super().__init__(message, EXIT_NUMERICAL, detail)


class QuadratureError(NumericalError):
    """Adaptive quadrature exhausted its refinement depth"""


class BracketError(NumericalError):
    """Root bracket without a sign change"""


class TruncationError(NumericalError):
    """Basis truncation did not converge"""


class InputOutputError(AppError):
    """Reading configuration/tables or writing results failed"""
    def __init__(self, message: str, detail: Any = None):
        super().__init__(message, EXIT_IO, detail)


def _prepare_detail(detail: Any):
    if detail is None:
        return None
    if isinstance(detail, dict):
        return detail
    return {"error": str(detail)}


def _report(message: str, detail: Any = None) -> None:
    payload = ErrorResponse(status="error", message=message, detail=_prepare_detail(detail))
    sys.stderr.write(payload.model_dump_json() + "\n")


def error_handler(func: Callable[..., int]) -> Callable[..., int]:
    """
    Top-level exception handler for commands.
    Catches all exceptions and converts them to exit codes with a JSON
    error document on standard error.
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except AppError as exc:
            logger.error(f"{type(exc).__name__}: {exc.message}")
            _report(exc.message, exc.detail)
            return exc.exit_code
        except ValidationError as exc:
            logger.error(f"Validation error: {exc.error_count()} problem(s)")
            _report("Validation error", {"errors": exc.errors(include_url=False, include_context=False, include_input=False)})
            return EXIT_VALIDATION
        except OSError as exc:
            logger.error(f"I/O error: {exc}")
            _report("I/O error", str(exc))
            return EXIT_IO
        except Exception as exc:
            logger.exception("Unexpected failure")
            _report("Internal numerical error", str(exc) if str(exc) else type(exc).__name__)
            return EXIT_NUMERICAL

    return wrapper
