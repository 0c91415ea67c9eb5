"""Content digests used in provenance sidecars."""

import hashlib
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel


def hash_bytes(data: bytes) -> str:
    """sha256 hex digest of raw bytes."""
    return hashlib.sha256(data).hexdigest()


def hash_file(path: str | Path) -> str:
    """sha256 of a file's content."""
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def hash_config(config: BaseModel | dict[str, Any]) -> str:
    """sha256 of a canonical (sorted-key) JSON rendering of a config."""
    if isinstance(config, BaseModel):
        config = config.model_dump(mode="json")
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hash_bytes(canonical.encode("utf-8"))
