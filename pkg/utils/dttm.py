import time
from contextlib import contextmanager
from typing import Dict, Iterator


@contextmanager
def timed(record: Dict[str, float], label: str) -> Iterator[None]:
    """Store the wall-clock seconds spent in the block under ``record[label]``."""
    start = time.perf_counter()
    try:
        yield
    finally:
        record[label] = record.get(label, 0.0) + time.perf_counter() - start
