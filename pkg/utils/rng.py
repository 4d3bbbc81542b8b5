import zlib

import numpy as np


def stream(seed: int, label: str) -> np.random.Generator:
    """Return an independent generator for ``label`` derived from the run seed.

    The stream depends only on ``(seed, label)``, so results do not change with thread count
    or with the order in which subtasks are scheduled.
    """
    key = zlib.crc32(label.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(key,)))
