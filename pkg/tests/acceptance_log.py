"""Outcome of each acceptance criterion, printed in the terminal summary."""

import time
from contextlib import contextmanager

RESULTS: dict[int, tuple[str, bool, float, str]] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS[number] = (title, False, time.perf_counter() - start, type(exc).__name__)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    RESULTS[number] = (title, ok, elapsed, "" if ok else f"exceeded {limit:.0f} s")
    assert ok, f"criterion {number} took {elapsed:.1f} s, limit {limit:.0f} s"


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(RESULTS):
        title, ok, elapsed, note = RESULTS[n]
        status = "PASS" if ok else "FAIL"
        extra = f" ({note})" if note else ""
        lines.append(f"criterion {n:2d} {status} {elapsed:7.2f} s  {title}{extra}")
    return lines
