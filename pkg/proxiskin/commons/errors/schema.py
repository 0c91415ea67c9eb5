from typing import Any, Optional

from pydantic import BaseModel


class ErrorSchema(BaseModel):
    status: bool = False
    stage: str
    timestamp: int
    error_code: Optional[str] = None
    message: str
    data: Optional[Any] = None
