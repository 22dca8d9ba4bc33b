from __future__ import annotations

import asyncio
import logging
from typing import Callable

from algebra.weyl import weyl_report
from config import settings
from errors import GradingError
from models import GradingSpec, SweepItem, SweepResult

logger = logging.getLogger(__name__)


async def run_sweep(
    specs: list[GradingSpec],
    verify: bool = False,
    max_concurrent: int | None = None,
    on_progress: Callable | None = None,
) -> SweepResult:
    """Compute the Weyl group of every spec with bounded concurrency; results keep the input order."""
    max_concurrent = max_concurrent or settings.max_concurrent
    semaphore = asyncio.Semaphore(max_concurrent)

    async def compute_one(index: int, spec: GradingSpec) -> SweepItem:
        async with semaphore:
            if on_progress:
                on_progress(index, spec.label(), "computing")

            weyl = await asyncio.to_thread(weyl_report, spec, verify)

            if on_progress:
                on_progress(index, spec.label(), weyl.verdict or "done")
            return SweepItem(spec=spec, weyl=weyl, exit_code=3 if weyl.verdict == "mismatch" else 0)

    tasks = [compute_one(i, s) for i, s in enumerate(specs)]
    results = await asyncio.gather(*tasks, return_exceptions=True)

    items = []
    for spec, r in zip(specs, results):
        if isinstance(r, Exception):
            logger.warning("%s failed: %s", spec.label(), r)
            code = r.exit_code if isinstance(r, GradingError) else 1
            items.append(SweepItem(spec=spec, errors=[str(r)], exit_code=code))
        else:
            items.append(r)

    return SweepResult(
        total=len(specs),
        verified=sum(1 for i in items if i.weyl and i.weyl.verdict == "ok"),
        mismatches=sum(1 for i in items if i.weyl and i.weyl.verdict == "mismatch"),
        failures=sum(1 for i in items if i.errors),
        items=items,
    )
