from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, PlainValidator, ConfigDict, PlainSerializer


def _read_only(value: Any, dtype: type) -> np.ndarray:
    arr = np.array(value, dtype=dtype)
    arr.setflags(write=False)
    return arr


def _to_list(arr: np.ndarray) -> list:
    return arr.tolist()


FloatArray = Annotated[
    np.ndarray,
    PlainValidator(lambda v: _read_only(v, np.float64)),
    PlainSerializer(_to_list, return_type=list, when_used="json"),
]
"""float64 numpy array, read-only once validated, JSON as nested lists."""

IntArray = Annotated[
    np.ndarray,
    PlainValidator(lambda v: _read_only(v, np.int64)),
    PlainSerializer(_to_list, return_type=list, when_used="json"),
]


class BaseSchema(BaseModel):
    """Base schema for immutable domain values."""

    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
        extra="forbid",
    )


class ConfigSchema(BaseModel):
    """Base schema for user-facing configuration sections."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        validate_default=True,
    )
