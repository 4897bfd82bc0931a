"""Small shared helpers."""

from __future__ import annotations

import json
import os


def thread_budget():
    """Worker cap from KNOTKIT_THREADS, defaulting to the hardware count."""
    raw = os.environ.get("KNOTKIT_THREADS", "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            return 1
    return os.cpu_count() or 1


def parallel_map(fn, items):
    """Order-preserving map, threaded when the budget and the workload
    justify it.  Results are identical to the serial map."""
    items = list(items)
    budget = thread_budget()
    if budget <= 1 or len(items) < 8:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=min(budget, len(items))) as pool:
        return list(pool.map(fn, items))


def dump_json(data):
    """Canonical JSON text: fixed field order as constructed, one level of
    indentation, trailing newline."""
    return json.dumps(data, indent=1) + "\n"
