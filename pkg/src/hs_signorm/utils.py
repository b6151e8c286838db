"""Async helpers for running experiment cells."""

import asyncio
import logging
import time
from functools import wraps
from typing import Any, Awaitable, Callable, List

from .errors import SignormError

logger = logging.getLogger(__name__)


async def run_parallel(
    *tasks: Callable[[], Awaitable[Any]], max_concurrent: int = 4
) -> List[Any]:
    """
    Run multiple async tasks in parallel with concurrency limit.

    Args:
        *tasks: Async callables to execute
        max_concurrent: Maximum concurrent tasks

    Returns:
        Results in task order; a failed task contributes its exception.
        Expected SignormError failures are logged at DEBUG, anything else at ERROR.
    """
    semaphore = asyncio.Semaphore(max(1, max_concurrent))

    async def wrapped_task(task_func):
        async with semaphore:
            try:
                return await task_func()
            except SignormError as e:
                logger.debug(f"Task rejected: {e}")
                raise
            except Exception as e:
                logger.error(f"Task failed: {e}", exc_info=True)
                raise

    return await asyncio.gather(*[wrapped_task(task) for task in tasks], return_exceptions=True)


def measure_time(func):
    """Log the wall time of a coroutine function."""

    @wraps(func)
    async def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            result = await func(*args, **kwargs)
            duration = time.perf_counter() - start
            logger.info(f"{func.__name__} completed in {1000 * duration:.1f} ms")
            return result
        except SignormError as e:
            duration = time.perf_counter() - start
            logger.debug(f"{func.__name__} rejected after {1000 * duration:.1f} ms: {e}")
            raise
        except Exception as e:
            duration = time.perf_counter() - start
            logger.error(f"{func.__name__} failed after {1000 * duration:.1f} ms: {e}")
            raise

    return wrapper
