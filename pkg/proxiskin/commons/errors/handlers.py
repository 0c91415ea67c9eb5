import time
from typing import Any, Callable, Dict, Optional, Type

from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from .exception import ProxiskinException
from .schema import ErrorSchema

err_console = Console(stderr=True)


def create_error_response(
    stage: str, message: str, error_code: Optional[str] = None, data: Any = None
) -> ErrorSchema:
    """Create standardized error payload."""
    return ErrorSchema(
        status=False,
        stage=stage,
        timestamp=int(time.time() * 1000),
        error_code=error_code,
        message=message,
        data=data,
    )


def _emit(payload: ErrorSchema) -> None:
    err_console.print(f"[bold red]error[/bold red] {escape(f'[{payload.stage}]')} {escape(payload.message)}")
    if payload.data:
        err_console.print_json(payload.model_dump_json(include={"error_code", "data"}))


def handle_app_exception(stage: str, exc: ProxiskinException) -> int:
    """Handle toolkit exceptions."""
    payload = create_error_response(
        stage=stage,
        message=exc.message,
        error_code=exc.error_code,
        data=exc.data,
    )
    logger.bind(stage=stage).error(f"{exc.error_code}: {exc.message}")
    _emit(payload)
    return exc.exit_code


def handle_validation_error(stage: str, exc: ValidationError) -> int:
    """Handle pydantic validation errors (config and artifact parsing)."""
    errors = exc.errors(include_url=False, include_context=False)
    fields = [".".join(str(p) for p in err["loc"]) for err in errors]
    payload = create_error_response(
        stage=stage,
        message=f"Invalid configuration: {', '.join(fields)}",
        error_code="validation_error",
        data=[{"field": f, "message": e["msg"]} for f, e in zip(fields, errors)],
    )
    logger.bind(stage=stage).error(payload.message)
    _emit(payload)
    return 2


def handle_file_not_found(stage: str, exc: FileNotFoundError) -> int:
    payload = create_error_response(
        stage=stage,
        message=f"File not found: {exc.filename or exc}",
        error_code="missing_artifact",
        data={"path": str(exc.filename)} if exc.filename else None,
    )
    logger.bind(stage=stage).error(payload.message)
    _emit(payload)
    return 2


def handle_unhandled_exception(stage: str, exc: Exception) -> int:
    """Handle any unhandled exceptions."""
    logger.bind(stage=stage).exception(f"Unhandled exception: {exc}")
    _emit(
        create_error_response(
            stage=stage,
            message="Internal error",
            error_code="internal_error",
            data={"detail": str(exc)},
        )
    )
    return 1


EXCEPTION_HANDLERS_MAPPING: Dict[Type[BaseException], Callable[[str, Any], int]] = {
    ProxiskinException: handle_app_exception,
    ValidationError: handle_validation_error,
    FileNotFoundError: handle_file_not_found,
    Exception: handle_unhandled_exception,
}


def handle_exception(stage: str, exc: Exception) -> int:
    """Dispatch to the most specific handler along the exception's MRO."""
    for klass in type(exc).__mro__:
        handler = EXCEPTION_HANDLERS_MAPPING.get(klass)
        if handler is not None:
            return handler(stage, exc)
    return handle_unhandled_exception(stage, exc)
