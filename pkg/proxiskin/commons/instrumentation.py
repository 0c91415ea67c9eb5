import time
import uuid
from contextlib import contextmanager
from typing import Iterator

from loguru import logger

RUN_ID = uuid.uuid4().hex[:12]


@contextmanager
def stage_timer(stage: str) -> Iterator[None]:
    """Log start, finish and elapsed wall time of a pipeline stage."""
    bound = logger.bind(stage=stage, run_id=RUN_ID)
    bound.info(f"{stage} - started")
    start_time = time.perf_counter()
    try:
        yield
    except Exception:
        bound.warning(f"{stage} - failed after {time.perf_counter() - start_time:.3f}s")
        raise
    bound.info(f"{stage} - done in {time.perf_counter() - start_time:.3f}s")
