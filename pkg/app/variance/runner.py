"""
Chunked, worker-count-independent evaluation of per-sample functions.
"""

import logging
import time
from multiprocessing import Pool
from typing import Callable

import numpy as np

from app.variance.sampling import sample_rng

logger = logging.getLogger(__name__)

Sampler = Callable[[np.random.Generator], float]


def _run_chunk(task: tuple[Sampler, int, int, int]) -> np.ndarray:
    sampler, seed, start, stop = task
    return np.array([sampler(sample_rng(seed, i)) for i in range(start, stop)], dtype=float)


def run_samples(
    sampler: Sampler,
    n: int,
    seed: int,
    workers: int = 1,
    chunk_size: int = 256,
) -> np.ndarray:
    """Evaluate sampler on streams 0..n-1 and return the values in index order.

    Chunks have a fixed size independent of `workers`; with more than one
    worker they are mapped over a process pool, so `sampler` must pickle.
    """
    tasks = [(sampler, seed, start, min(start + chunk_size, n)) for start in range(0, n, chunk_size)]
    started = time.perf_counter()
    if workers == 1:
        chunks = [_run_chunk(task) for task in tasks]
    else:
        with Pool(processes=workers) as pool:
            chunks = pool.map(_run_chunk, tasks)
    values = np.concatenate(chunks)
    logger.info(
        f"{type(sampler).__name__}: {n} samples in {len(tasks)} chunks on {workers} worker(s), "
        f"{time.perf_counter() - started:.2f}s"
    )
    return values
