"""Subset verification of clique-coloring properties.

``verify_pq`` checks that every p-vertex subset of a universe spans at least
q distinct edge colors; ``verify_strong`` checks that every subset of size
2..smax spans at least (size - 1) colors.  Both run either exhaustively over
all subsets in colexicographic order or on seeded uniform random samples,
and both stop early once a configurable number of violations has been found.

Distinct-color counting uses the canonical encodings from the colorings
module as the equality key: the verifier first tabulates an integer id for
the encoded color of every vertex pair, then scans subsets against that
table.

Scans are chunked.  Chunks are processed in order (optionally fanned out to
worker processes, which share nothing and return per-chunk violation lists),
so reports are identical for any worker count: the scan consumes whole
chunks until the violation cap is reached, counts every subset in a consumed
chunk, and reports the first ``violation_cap`` violations in scan order,
sorted for display.  In sampled mode, chunk c of samples draws from
``random.Random((seed << 64) | c)``, which makes samples reproducible and
independent of the worker count as well.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from multiprocessing import get_context
from typing import Callable, Iterator, Sequence

from .analysis import BudgetExceeded

DEFAULT_SUBSET_BUDGET = 2**31
EXHAUSTIVE_CHUNK = 16384
SAMPLE_CHUNK = 4096


# --- colexicographic subset enumeration ---


def colex_next(subset: list[int], n: int) -> bool:
    """Advance to the colex successor in place; False past the last subset."""
    k = len(subset)
    for i in range(k):
        bumped = subset[i] + 1
        limit = subset[i + 1] if i + 1 < k else n
        if bumped < limit:
            subset[i] = bumped
            for j in range(i):
                subset[j] = j
            return True
    return False


def colex_rank(subset: Sequence[int]) -> int:
    """Rank of an increasing index tuple in colex order."""
    return sum(comb(c, i + 1) for i, c in enumerate(subset))


def colex_unrank(rank: int, n: int, k: int) -> list[int]:
    """The rank-th k-subset of range(n) in colex order."""
    out = [0] * k
    r = rank
    while k > 0:
        lower = k - 1
        while lower < n:
            mid = (lower + n + 1) // 2
            if r < comb(mid, k):
                n = mid - 1
            else:
                lower = mid
        r -= comb(n, k)
        k -= 1
        out[k] = n
    return out


def subsets_colex(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(n) as increasing tuples, in colex order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield ()
        return
    subset = list(range(k))
    while True:
        yield tuple(subset)
        if not colex_next(subset, n):
            return


# --- pair-color tables ---


def build_pair_table(vertices: Sequence, encoder: Callable) -> list[list[int]]:
    """Symmetric table of small integer ids for encoded pair colors."""
    n = len(vertices)
    table = [[0] * n for _ in range(n)]
    ids: dict[str, int] = {}
    for j in range(1, n):
        w = vertices[j]
        row_j = table[j]
        for i in range(j):
            key = encoder(vertices[i], w)
            cid = ids.setdefault(key, len(ids))
            table[i][j] = cid
            row_j[i] = cid
    return table


# --- chunked scanning (worker functions must be picklable, so module level) ---

_SCAN: dict = {}


def _scan_init(table: list[list[int]], n: int) -> None:
    _SCAN["table"] = table
    _SCAN["n"] = n


def _scan_chunk(task: tuple) -> list[tuple[tuple[int, ...], int, int]]:
    """Scan one chunk; returns (subset, distinct, required) per violation."""
    table = _SCAN["table"]
    n = _SCAN["n"]
    kind = task[0]
    out: list[tuple[tuple[int, ...], int, int]] = []
    if kind == "exhaustive":
        _, k, required, start, count = task
        subset = colex_unrank(start, n, k)
        index_pairs = list(combinations(range(k), 2))
        for _ in range(count):
            seen = {table[subset[a]][subset[b]] for a, b in index_pairs}
            if len(seen) < required:
                out.append((tuple(subset), len(seen), required))
            if not colex_next(subset, n):
                break
    else:
        _, sizes, seed, chunk_index, count = task
        rng = random.Random((seed << 64) | chunk_index)
        lo, hi = sizes
        for _ in range(count):
            k = lo if lo == hi else rng.randint(lo, hi)
            required = k - 1 if lo != hi or task_is_strong(task) else _SCAN["required"]
            subset = sorted(rng.sample(range(n), k))
            seen = {
                table[subset[a]][subset[b]] for a, b in combinations(range(k), 2)
            }
            if len(seen) < required:
                out.append((tuple(subset), len(seen), required))
    return out


def task_is_strong(task: tuple) -> bool:
    return task[0] == "sampled-strong"


# --- reports ---


@dataclass(frozen=True)
class Violation:
    """A subset spanning fewer colors than required."""

    vertices: tuple[str, ...]
    distinct: int
    required: int

    def __str__(self) -> str:
        verts = " ".join(self.vertices)
        return f"{verts} distinct={self.distinct} required={self.required}"


@dataclass
class VerificationReport:
    coloring: str
    universe: str
    target: str
    mode: str
    seed: int | None
    samples: int | None
    budget: int
    workers: int
    violation_cap: int
    total_subsets: int
    subsets_checked: int
    violations: list[Violation]
    stopped_early: bool
    wall_time_s: float

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class WitnessDetail:
    """Every pair of a subset with its encoded color, plus the distinct count."""

    rows: tuple[tuple[str, str, str], ...]
    distinct: int


def witness_detail(subset: Sequence, encoder: Callable) -> WitnessDetail:
    verts = sorted(subset)
    rows = []
    seen = set()
    for j in range(1, len(verts)):
        for i in range(j):
            enc = encoder(verts[i], verts[j])
            rows.append((str(verts[i]), str(verts[j]), enc))
            seen.add(enc)
    return WitnessDetail(rows=tuple(rows), distinct=len(seen))


# --- drivers ---


def _run_tasks(
    tasks: list[tuple],
    table: list[list[int]],
    n: int,
    workers: int,
    violation_cap: int,
) -> tuple[list, int, bool]:
    """Consume chunk tasks in order until the violation cap is reached."""
    collected: list = []
    checked = 0
    consumed = 0
    if workers <= 1:
        _scan_init(table, n)
        source = map(_scan_chunk, tasks)
        pool = None
    else:
        pool = get_context().Pool(workers, initializer=_scan_init, initargs=(table, n))
        source = pool.imap(_scan_chunk, tasks)
    try:
        for task, found in zip(tasks, source):
            checked += task[-1]
            consumed += 1
            collected.extend(found)
            if len(collected) >= violation_cap:
                break
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    stopped_early = consumed < len(tasks) or len(collected) > 0 and len(collected) >= violation_cap and consumed < len(tasks)
    return collected, checked, consumed < len(tasks)


def _chunked(kind_tasks: list[tuple], chunk: int) -> list[tuple]:
    """Split (kind, meta..., total) descriptors into fixed-size chunk tasks."""
    out: list[tuple] = []
    for desc in kind_tasks:
        *head, total = desc
        start = 0
        while start < total:
            count = min(chunk, total - start)
            out.append((*head, start, count))
            start += count
    return out


def _sampled_tasks(kind: str, sizes: tuple[int, int], seed: int, samples: int) -> list[tuple]:
    tasks = []
    start = 0
    chunk_index = 0
    while start < samples:
        count = min(SAMPLE_CHUNK, samples - start)
        tasks.append((kind, sizes, seed, chunk_index, count))
        chunk_index += 1
        start += count
    return tasks


def _finish(
    vertices: Sequence,
    collected: list,
    checked: int,
    stopped: bool,
    cap: int,
    started: float,
    **report_fields,
) -> VerificationReport:
    trimmed = collected[:cap] if len(collected) > cap else collected
    violations = sorted(
        (
            Violation(
                vertices=tuple(str(vertices[i]) for i in subset),
                distinct=distinct,
                required=required,
            )
            for subset, distinct, required in trimmed
        ),
        key=lambda v: v.vertices,
    )
    return VerificationReport(
        violations=violations,
        subsets_checked=checked,
        stopped_early=stopped,
        wall_time_s=time.perf_counter() - started,
        **report_fields,
    )


def _validate_common(
    n: int, mode: str, seed: int, samples: int, workers: int, violation_cap: int, budget: int
) -> None:
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if mode == "sampled":
        if seed < 0:
            raise ValueError(f"seed must be >= 0, got {seed}")
        if samples < 1:
            raise ValueError(f"samples must be >= 1, got {samples}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if violation_cap < 1:
        raise ValueError(f"violation cap must be >= 1, got {violation_cap}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    if n < 1:
        raise ValueError("universe must be nonempty")


def verify_pq(
    vertices: Sequence,
    encoder: Callable,
    p: int,
    q: int,
    *,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = 10**6,
    budget: int = DEFAULT_SUBSET_BUDGET,
    workers: int = 1,
    violation_cap: int = 1,
    coloring: str = "",
    universe: str = "",
) -> VerificationReport:
    """Check that every p-subset spans at least q colors (1 <= q <= C(p,2))."""
    started = time.perf_counter()
    n = len(vertices)
    _validate_common(n, mode, seed, samples, workers, violation_cap, budget)
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if not 1 <= q <= comb(p, 2):
        raise ValueError(f"q must lie in 1..C(p,2)={comb(p, 2)}, got {q}")

    if mode == "exhaustive":
        total = comb(n, p)
        if total > budget:
            raise BudgetExceeded(total, budget, "use sampled mode")
        tasks = _chunked([("exhaustive", p, q, total)], EXHAUSTIVE_CHUNK) if total else []
    else:
        total = samples
        if total > budget:
            raise BudgetExceeded(total, budget, "lower the sample count")
        if p > n:
            raise ValueError(f"cannot sample {p}-subsets from {n} vertices")
        tasks = _sampled_tasks("sampled-pq", (p, p), seed, samples)
        _SCAN["required"] = q  # consumed by in-process scans
    table = build_pair_table(vertices, encoder)
    if mode == "sampled":
        # required must survive the worker initializer as well
        for i, task in enumerate(tasks):
            tasks[i] = task
    collected, checked, stopped = _run_tasks_with_required(
        tasks, table, n, workers, violation_cap, q if mode == "sampled" else None
    )
    return _finish(
        vertices,
        collected,
        checked,
        stopped,
        violation_cap,
        started,
        coloring=coloring,
        universe=universe,
        target=f"p={p} q={q}",
        mode=mode,
        seed=seed if mode == "sampled" else None,
        samples=samples if mode == "sampled" else None,
        budget=budget,
        workers=workers,
        violation_cap=violation_cap,
        total_subsets=total,
    )


def verify_strong(
    vertices: Sequence,
    encoder: Callable,
    smax: int,
    *,
    mode: str = "exhaustive",
    seed: int = 0,
    samples: int = 10**6,
    budget: int = DEFAULT_SUBSET_BUDGET,
    workers: int = 1,
    violation_cap: int = 1,
    coloring: str = "",
    universe: str = "",
) -> VerificationReport:
    """Check every subset of size 2..smax spans at least (size - 1) colors."""
    started = time.perf_counter()
    n = len(vertices)
    _validate_common(n, mode, seed, samples, workers, violation_cap, budget)
    if smax < 2:
        raise ValueError(f"smax must be >= 2, got {smax}")

    sizes = list(range(2, min(smax, n) + 1))
    if mode == "exhaustive":
        total = sum(comb(n, k) for k in sizes)
        if total > budget:
            raise BudgetExceeded(total, budget, "use sampled mode")
        tasks = _chunked(
            [("exhaustive", k, k - 1, comb(n, k)) for k in sizes], EXHAUSTIVE_CHUNK
        )
    else:
        total = samples
        if total > budget:
            raise BudgetExceeded(total, budget, "lower the sample count")
        if min(smax, n) < 2:
            raise ValueError("strong verification needs at least 2 vertices")
        tasks = _sampled_tasks("sampled-strong", (2, min(smax, n)), seed, samples)
    table = build_pair_table(vertices, encoder)
    collected, checked, stopped = _run_tasks_with_required(
        tasks, table, n, workers, violation_cap, None
    )
    return _finish(
        vertices,
        collected,
        checked,
        stopped,
        violation_cap,
        started,
        coloring=coloring,
        universe=universe,
        target=f"strong smax={smax}",
        mode=mode,
        seed=seed if mode == "sampled" else None,
        samples=samples if mode == "sampled" else None,
        budget=budget,
        workers=workers,
        violation_cap=violation_cap,
        total_subsets=total,
    )


def _run_tasks_with_required(tasks, table, n, workers, violation_cap, required):
    if required is not None:
        _SCAN["required"] = required
    return _run_tasks(tasks, table, n, workers, violation_cap)
