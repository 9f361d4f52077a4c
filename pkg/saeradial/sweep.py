"""Worker pool for grid sweeps over (k, tau, P) points"""

import logging
import math
import multiprocessing
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import psutil

from saeradial.bound import SaeParam
from saeradial.config import env_name, get_config_int
from saeradial.errors import DomainError

logger = logging.getLogger(__name__)


def resolve_worker_count(requested: Optional[int] = None) -> int:
    """Requested count, else the physical core count, capped by SAE_RADIAL_THREADS"""
    count = requested if requested is not None else (psutil.cpu_count(logical=False) or 1)
    if count < 1:
        raise DomainError(f"worker count must be at least 1, got {count}")
    cap = get_config_int("threads")
    if cap is not None:
        if cap < 1:
            raise DomainError(f"{env_name('threads')} must be at least 1, got {cap}")
        count = min(count, cap)
    return count


def _current_verbosity() -> int:
    level = logging.getLogger().getEffectiveLevel()
    if level <= logging.DEBUG:
        return 2
    if level <= logging.INFO:
        return 1
    return 0


class SweepPool:
    """Maps a picklable task over grid points; results come back sorted by input tuple"""

    def __init__(self, worker_count: Optional[int] = None):
        self.worker_count = resolve_worker_count(worker_count)
        logger.info(f"SweepPool initialized with {self.worker_count} workers")

    def map(self, task: Callable[[Tuple], Any], items: Sequence[Tuple]) -> List[Any]:
        """Evaluate task on every item; the reduction order is the sorted order of the items"""
        items = list(items)
        if self.worker_count == 1 or len(items) <= 1:
            results = [task(item) for item in items]
        else:
            from saeradial.utils import setup_logging

            # Use spawn method for cross-platform compatibility
            ctx = multiprocessing.get_context('spawn')
            processes = min(self.worker_count, len(items))
            with ctx.Pool(
                processes=processes,
                initializer=setup_logging,
                initargs=(_current_verbosity(),),
            ) as pool:
                results = pool.map(task, items)
                pool.close()
                pool.join()
            logger.info(f"SweepPool evaluated {len(items)} points on {processes} workers")
        order = sorted(range(len(items)), key=lambda i: items[i])
        return [results[i] for i in order]


def tau_from_float(value: float) -> SaeParam:
    """Inverse of SaeParam.as_float, for tasks that travel as plain tuples"""
    if math.isinf(value):
        return SaeParam.plus_infinity() if value > 0 else SaeParam.minus_infinity()
    return SaeParam.finite(value)


def phase_row(task: Tuple[float, float, int, float]) -> Dict[str, Any]:
    """One scan row from a (k, tau, l, P) task"""
    from saeradial.scattering import phase_shift

    k, tau_value, l, p = task
    wave = phase_shift(int(l), p, k, tau_from_float(tau_value))
    return {
        "k": k,
        "tau": tau_value,
        "delta_standard": wave.delta_standard,
        "delta_sae": wave.delta_sae,
        "delta_total": wave.delta_total,
        "re_S": wave.s_matrix.real,
        "im_S": wave.s_matrix.imag,
    }
