#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
The depth-by-depth existence search.

Starting from the output set of the empty network, every depth extends each
surviving set by every admissible level, drops exact duplicates and then
minimises the pool up to permutation and reflection. An n-input network of
depth d exists iff the sorted set T_n survives at depth d.
"""

from typing import Callable, Iterator, List, Optional, Tuple

import dataclasses
import os
import time

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field

from .checkpoint import checkpoint_save, latest_checkpoint
from .network import Level, Network, MAX_CHANNELS, batcher_network, concat, enumerate_levels, is_sorting_network
from .outset import OutputSet, extend, is_sorted_set
from .prune import lookahead_levels, second_last_levels, sortable_in_three, sortable_within
from .subsume import CandidatePool, PoolEntry, SearchExhausted, minimize
from .utils import formatCount


Progress = Callable[[str], None]


@dataclass
class SearchConfig:
    """Parameters of one existence search"""

    n: int
    """The number of channels"""
    d: int
    """The target depth"""
    worker_count: int = 1
    minimize_through_depth: Optional[int] = None
    """Last depth that is minimised up to permutation and reflection (default d)"""
    checkpoint_directory: Optional[str] = None
    resume: bool = False
    """Continue from the deepest matching checkpoint in ``checkpoint_directory``"""
    emit_witness: bool = True
    screen: bool = True
    """Keep only extensions that still pass the sortable-in-k test for the levels left"""
    progress_interval: float = 10.0
    """Seconds between progress messages, 0 disables them"""

    def __post_init__(self):
        if not 2 <= self.n <= MAX_CHANNELS:
            raise ValueError(f"channel count {self.n} is outside 2..{MAX_CHANNELS}")
        if self.d < 0:
            raise ValueError(f"depth {self.d} is negative")
        if self.worker_count < 1:
            raise ValueError(f"worker count {self.worker_count} is below 1")
        if self.minimize_through_depth is None:
            self.minimize_through_depth = self.d


@dataclass
class DepthStats:
    """The funnel of one depth"""

    depth: int
    pool_size: int = 0
    """Entries of the previous depth"""
    generated_count: int = 0
    """pool_size times the number of levels"""
    lookahead_survivors: int = 0
    level_survivors: int = 0
    """Extensions returned by :py:func:`get_all_levels`"""
    sortable_k_survivors: int = 0
    """Extensions left after the remaining-depth screen"""
    unique_count: int = 0
    minimized_count: int = 0
    minimized: bool = True
    elapsed_seconds: float = 0.0
    cpu_seconds: float = 0.0

    def asDict(self) -> dict:
        return dataclasses.asdict(self)

    @staticmethod
    def fromDict(values: dict) -> "DepthStats":
        known = {f.name for f in dataclasses.fields(DepthStats)}
        return DepthStats(**{key: value for key, value in values.items() if key in known})


@dataclass
class SearchStats:
    n: int
    d: int
    depths: List[DepthStats] = field(default_factory=list)

    def at(self, depth: int) -> Optional[DepthStats]:
        for stats in self.depths:
            if stats.depth == depth:
                return stats
        return None

    @property
    def elapsed_seconds(self) -> float:
        return sum(stats.elapsed_seconds for stats in self.depths)

    @property
    def cpu_seconds(self) -> float:
        return sum(stats.cpu_seconds for stats in self.depths)


@dataclass
class SearchOutcome:
    exists: bool
    stats: SearchStats
    witness: Optional[Network] = None
    resumed_from: Optional[int] = None
    """Depth of the checkpoint the search continued from"""


class _Ticker:
    """Rate limits progress messages"""

    def __init__(self, progress: Optional[Progress], interval: float):
        self.progress = progress
        self.interval = interval
        self.last = time.monotonic()

    def __call__(self, msg: str, force: bool = False):
        if self.progress is None:
            return
        now = time.monotonic()
        if force or (self.interval > 0 and now - self.last >= self.interval):
            self.last = now
            self.progress(msg)


def get_all_levels(outputs: OutputSet, t: int, d: int, levels: Optional[List[Level]] = None) -> List[Level]:
    """The candidate levels for depth ``t`` of a depth-``d`` search"""
    return _filterLevels(outputs, t, d, levels if levels is not None else enumerate_levels(outputs.n))[1]


def _filterLevels(outputs: OutputSet, t: int, d: int, levels: List[Level]) -> Tuple[int, List[Level]]:
    """``(look-ahead survivors, candidate levels)``"""
    remaining = d - t
    if remaining == 3:
        survivors = lookahead_levels(outputs, levels, 8)
        return len(survivors), survivors
    if remaining == 2:
        survivors = lookahead_levels(outputs, levels, 4)
        return len(survivors), [level for level in survivors if sortable_in_three(extend(outputs, level))]
    if remaining == 1:
        return len(levels), second_last_levels(outputs, levels)
    return len(levels), list(levels)


def _expandEntries(entries: List[PoolEntry], n: int, t: int, d: int, screen: bool):
    """Extends a batch of entries; returns the deduplicated extensions and the funnel counts"""
    started = time.process_time()
    levels = enumerate_levels(n)
    local = CandidatePool(n)
    counts = [0, 0, 0]
    for entry in entries:
        lookahead, candidates = _filterLevels(entry.outputs, t, d, levels)
        counts[0] += lookahead
        counts[1] += len(candidates)
        for level in candidates:
            extended = extend(entry.outputs, level)
            if screen and not sortable_within(extended, d - t):
                continue
            counts[2] += 1
            local.add(extended, concat(entry.witness, level))
    return local.entries, counts, time.process_time() - started


def _expandTask(task):
    return _expandEntries(*task)


def _chunked(entries: List[PoolEntry], pieces: int) -> Iterator[List[PoolEntry]]:
    size = max(1, -(-len(entries) // pieces))
    for start in range(0, len(entries), size):
        yield entries[start : start + size]


def generate_next_depth(
    pool: CandidatePool,
    t: int,
    d: int,
    screen: bool = True,
    workers: int = 1,
    stats: Optional[DepthStats] = None,
    progress: Optional[Progress] = None,
) -> CandidatePool:
    """
    Extends every entry of R[t-1] by its candidate levels and collects the
    distinct resulting sets. The counts of the funnel go into ``stats``.
    Losing a worker process raises :class:`SearchExhausted`.
    """
    stats = stats if stats is not None else DepthStats(depth=t)
    ticker = progress if isinstance(progress, _Ticker) else _Ticker(progress, 0)
    entries = pool.entries
    levelCount = len(enumerate_levels(pool.n))
    stats.pool_size = len(entries)
    stats.generated_count = len(entries) * levelCount
    result = CandidatePool(pool.n)
    done = 0

    def collect(extensions, counts, cpu, remote):
        for entry in extensions:
            result.add(entry.outputs, entry.witness)
        stats.lookahead_survivors += counts[0]
        stats.level_survivors += counts[1]
        stats.sortable_k_survivors += counts[2]
        if remote:
            stats.cpu_seconds += cpu

    if workers <= 1 or len(entries) < 2 * workers:
        for chunk in _chunked(entries, max(1, len(entries) // 64)):
            collect(*_expandEntries(chunk, pool.n, t, d, screen), False)
            done += len(chunk)
            ticker(f"depth {t}: extended {formatCount(done)} of {formatCount(len(entries))} sets")
    else:
        tasks = [(chunk, pool.n, t, d, screen) for chunk in _chunked(entries, workers * 16)]
        try:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                for (chunk, *_), outcome in zip(tasks, executor.map(_expandTask, tasks)):
                    collect(*outcome, True)
                    done += len(chunk)
                    ticker(f"depth {t}: extended {formatCount(done)} of {formatCount(len(entries))} sets")
        except BrokenProcessPool as exc:
            raise SearchExhausted(f"a worker died while extending depth {t} of n={pool.n}, d={d}") from exc
    stats.unique_count = len(result)
    return result


def exists_sorting_network(config: SearchConfig, progress: Optional[Progress] = None) -> SearchOutcome:
    """
    Decides whether a sorting network on ``config.n`` channels with
    ``config.d`` levels exists. The answer, the statistics and the witness
    do not depend on the worker count.
    """
    n, d = config.n, config.d
    ticker = _Ticker(progress, config.progress_interval)
    stats = SearchStats(n, d)
    pool = CandidatePool.initial(n)
    start = 1
    resumedFrom = None

    if config.checkpoint_directory is not None and config.resume:
        found = latest_checkpoint(config.checkpoint_directory, n, d, config.screen, config.minimize_through_depth)
        if found is not None:
            resumedFrom, pool, saved = found
            stats.depths = [DepthStats.fromDict(values) for values in saved if values.get("depth", 0) <= resumedFrom]
            start = resumedFrom + 1
            ticker(f"resuming from depth {resumedFrom} with {formatCount(len(pool))} sets", force=True)

    try:
        for t in range(start, d + 1):
            if len(pool) == 0:
                break
            depthStats = DepthStats(depth=t)
            wallStart = time.monotonic()
            cpuStart = time.process_time()
            pool = generate_next_depth(pool, t, d, config.screen, config.worker_count, depthStats, ticker)
            if t <= config.minimize_through_depth:
                cpuClock = [0.0]

                def minimizeProgress(done, total):
                    ticker(f"depth {t}: minimised {formatCount(done)} of {formatCount(total)} sets")

                pool = minimize(pool, config.worker_count, minimizeProgress, cpuClock)
                depthStats.cpu_seconds += cpuClock[0]
            else:
                depthStats.minimized = False
                pool = CandidatePool(n, pool.sortedEntries())
            depthStats.minimized_count = len(pool)
            depthStats.cpu_seconds += time.process_time() - cpuStart
            depthStats.elapsed_seconds = time.monotonic() - wallStart
            stats.depths.append(depthStats)
            ticker(
                f"depth {t}/{d}: {formatCount(depthStats.generated_count)} generated, "
                f"{formatCount(depthStats.sortable_k_survivors)} kept, {formatCount(len(pool))} minimal sets",
                force=True,
            )
            if config.checkpoint_directory is not None:
                checkpoint_save(
                    pool,
                    t,
                    config.checkpoint_directory,
                    d,
                    config.screen,
                    [s.asDict() for s in stats.depths],
                    config.minimize_through_depth,
                )
    except MemoryError as exc:
        raise SearchExhausted(f"out of memory while searching n={n}, d={d}") from exc

    sortedEntry = next((entry for entry in pool if is_sorted_set(entry.outputs)), None)
    witness = None
    if sortedEntry is not None and config.emit_witness:
        witness = sortedEntry.witness
        if witness.depth != d or not is_sorting_network(witness):
            raise RuntimeError(f"witness for n={n}, d={d} failed verification: {witness}")
    return SearchOutcome(sortedEntry is not None, stats, witness, resumedFrom)


def depth_upper_bound(n: int) -> int:
    """The depth of Batcher's network, an upper bound on the optimum"""
    return batcher_network(n).depth


def depth_searches(
    n: int, d_max: Optional[int] = None, template: Optional[SearchConfig] = None, progress: Optional[Progress] = None
) -> Iterator[SearchOutcome]:
    """
    Runs the existence search for d = 1, 2, ... up to ``d_max`` and stops
    after the first depth that admits a sorting network. Checkpoints of the
    individual searches live in ``target-<d>`` below the template's directory.
    """
    d_max = d_max if d_max is not None else depth_upper_bound(n)
    template = template if template is not None else SearchConfig(n, 1)
    for d in range(1, d_max + 1):
        directory = template.checkpoint_directory
        if directory is not None:
            directory = os.path.join(directory, f"target-{d}")
        config = dataclasses.replace(template, n=n, d=d, minimize_through_depth=None, checkpoint_directory=directory)
        if template.minimize_through_depth is not None and template.minimize_through_depth < template.d:
            config.minimize_through_depth = min(d, template.minimize_through_depth)
        outcome = exists_sorting_network(config, progress)
        yield outcome
        if outcome.exists:
            return


def optimal_depth(
    n: int, d_max: Optional[int] = None, template: Optional[SearchConfig] = None, progress: Optional[Progress] = None
) -> Optional[int]:
    """The smallest d ≤ d_max admitting an n-input sorting network, or None"""
    for outcome in depth_searches(n, d_max, template, progress):
        if outcome.exists:
            return outcome.stats.d
    return None
