import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

Item = TypeVar("Item")
Result = TypeVar("Result")


def worker_count(threads: int) -> int:
    """
    0 means one worker per available cpu.
    """
    if threads > 0:
        return threads
    return os.cpu_count() or 1


def parallel_map(
    func: Callable[[Item], Result], items: Iterable[Item], threads: int = 0
) -> List[Result]:
    """
    Apply `func` to every item on a thread pool. Results come back in input
    order.
    """
    items = list(items)
    workers = min(worker_count(threads), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
