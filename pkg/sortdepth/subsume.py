#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Subsumption of output sets up to channel permutation and reflection, and the
minimisation of a candidate pool down to its minimal representatives.

S_A subsumes S_B when some channel permutation maps S_A (or its reflection)
into S_B. A prefix whose output set is subsumed by another one never needs
to be explored: whatever sorts the larger set sorts a relabelled copy of the
smaller one in the same number of levels.
"""

from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import itertools
import time

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass

import numpy as np

from .network import Network
from .outset import OutputSet, dedup_key, full_set, reflect_set, weightTable


NAIVE_LIMIT = 7
"""Largest n the factorial oracles accept"""


class OracleRefusal(ValueError):
    """An exhaustive oracle was asked for a size it cannot handle"""


class SearchExhausted(RuntimeError):
    """The search ran out of memory or lost a worker; no answer is known"""


@dataclass(frozen=True)
class ChannelPermutation:
    """
    A bijection on the channels 1..n. ``mapping[c - 1]`` is the image of c.

    Applied to a word it moves the value of channel c to channel π(c).
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(c) for c in self.mapping))
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError(f"{self.mapping} is not a permutation of 1..{len(self.mapping)}")

    @staticmethod
    def identity(n: int) -> "ChannelPermutation":
        return ChannelPermutation(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, channel: int) -> int:
        return self.mapping[channel - 1]

    def apply(self, x: int) -> int:
        n = self.n
        out = 0
        for channel, image in enumerate(self.mapping, start=1):
            if x & (1 << (n - channel)):
                out |= 1 << (n - image)
        return out

    def apply_array(self, codes: np.ndarray) -> np.ndarray:
        n = self.n
        out = np.zeros_like(codes)
        for channel, image in enumerate(self.mapping, start=1):
            out |= ((codes >> (n - channel)) & 1) << (n - image)
        return out

    def apply_set(self, outputs: OutputSet) -> OutputSet:
        return OutputSet.from_codes(outputs.n, self.apply_array(outputs.codes))

    def compose(self, other: "ChannelPermutation") -> "ChannelPermutation":
        """``other`` after ``self``"""
        return ChannelPermutation(tuple(other(self(c)) for c in range(1, self.n + 1)))

    def inverse(self) -> "ChannelPermutation":
        inverse = [0] * self.n
        for channel, image in enumerate(self.mapping, start=1):
            inverse[image - 1] = channel
        return ChannelPermutation(tuple(inverse))


class Profile:
    """Per-set data reused by every subsumption test that involves the set"""

    __slots__ = ("outputs", "weights", "bits", "ones", "zeros")

    def __init__(self, outputs: OutputSet):
        n = outputs.n
        codes = outputs.codes
        self.outputs = outputs
        self.weights = weightTable(n)[codes]
        self.bits = [(codes >> (n - channel)) & 1 for channel in range(1, n + 1)]
        """Column of channel c (index c - 1) over all members"""
        self.ones = np.stack([np.bincount(self.weights[column == 1], minlength=n + 1) for column in self.bits], axis=1)
        """ones[k, c - 1]: members of weight k with a one on channel c"""
        self.zeros = outputs.weight_counts[:, None] - self.ones


def _compatibility(a: Profile, b: Profile) -> np.ndarray:
    """compat[i, j]: channel i + 1 of A may be mapped onto channel j + 1 of B"""
    ones = np.all(a.ones[:, :, None] <= b.ones[:, None, :], axis=0)
    zeros = np.all(a.zeros[:, :, None] <= b.zeros[:, None, :], axis=0)
    return ones & zeros


def _searchPermutation(a: Profile, b: Profile) -> Optional[Tuple[int, ...]]:
    sa, sb = a.outputs, b.outputs
    if sa.cardinality > sb.cardinality or np.any(sa.weight_counts > sb.weight_counts):
        return None
    n = sa.n
    if sa.issubset(sb):
        return tuple(range(1, n + 1))
    compat = _compatibility(a, b)
    if not compat.any(axis=1).all() or not compat.any(axis=0).all():
        return None

    order = sorted(range(n), key=lambda i: (int(compat[i].sum()), i))
    candidates = [np.flatnonzero(compat[i]) for i in range(n)]
    assigned = [0] * n
    used = [False] * n

    # keys encode (weight, projection onto the channels assigned so far)
    def assign(depth: int, keyA: np.ndarray, keyB: np.ndarray) -> bool:
        if depth == n:
            return True
        i = order[depth]
        nextA = keyA * 2 + a.bits[i]
        prefixes = np.unique(nextA)
        for j in candidates[i]:
            if used[j]:
                continue
            nextB = keyB * 2 + b.bits[j]
            if not np.all(np.isin(prefixes, nextB)):
                continue
            used[j] = True
            assigned[i] = j + 1
            if assign(depth + 1, nextA, nextB):
                return True
            used[j] = False
        return False

    if assign(0, a.weights, b.weights):
        return tuple(assigned)
    return None


def permutation_subsumes(first: OutputSet, second: OutputSet) -> Optional[ChannelPermutation]:
    """Some π with π(first) ⊆ second, or None"""
    if first.n != second.n:
        raise ValueError(f"output sets on {first.n} and {second.n} channels are incomparable")
    mapping = _searchPermutation(Profile(first), Profile(second))
    return ChannelPermutation(mapping) if mapping is not None else None


def find_subsumption(first: OutputSet, second: OutputSet) -> Optional[Tuple[bool, ChannelPermutation]]:
    """
    ``(reflected, π)`` with π(first) ⊆ second, where ``first`` is reflected
    beforehand if ``reflected`` is set; None if neither works.
    """
    found = permutation_subsumes(first, second)
    if found is not None:
        return False, found
    found = permutation_subsumes(reflect_set(first), second)
    if found is not None:
        return True, found
    return None


def subsumes_perm_refl(first: OutputSet, second: OutputSet) -> bool:
    return find_subsumption(first, second) is not None


def _naivePermutations(n: int) -> Iterator[ChannelPermutation]:
    if n > NAIVE_LIMIT:
        raise OracleRefusal(f"exhaustive permutation check refused for n={n} > {NAIVE_LIMIT}")
    for perm in itertools.permutations(range(1, n + 1)):
        yield ChannelPermutation(perm)


def naive_permutation_subsumes(first: OutputSet, second: OutputSet) -> bool:
    """Tries all n! permutations"""
    return any(second.members[perm.apply_array(first.codes)].all() for perm in _naivePermutations(first.n))


def naive_subsumes(first: OutputSet, second: OutputSet) -> bool:
    """Tries all n! permutations, with and without reflecting ``first``"""
    return naive_permutation_subsumes(first, second) or naive_permutation_subsumes(reflect_set(first), second)


@dataclass(frozen=True)
class PoolEntry:
    """An output set together with a network producing it"""

    outputs: OutputSet
    witness: Network

    def sortKey(self):
        return (self.outputs.cardinality, self.witness)


class CandidatePool:
    """
    The surviving output sets at one depth, free of exact duplicates.

    Among duplicates the lexicographically least witness is kept.
    """

    def __init__(self, n: int, entries: Iterable[PoolEntry] = ()):
        self.n = n
        """The number of channels"""
        self._entries: Dict[object, PoolEntry] = {}
        for entry in entries:
            self.add(entry.outputs, entry.witness)

    @staticmethod
    def initial(n: int) -> "CandidatePool":
        """R[0]: the empty network and its output set"""
        return CandidatePool(n, [PoolEntry(full_set(n), Network(n))])

    def add(self, outputs: OutputSet, witness: Network) -> bool:
        """Adds an entry; returns False if the set was already present"""
        key = dedup_key(outputs)
        present = self._entries.get(key)
        if present is None:
            self._entries[key] = PoolEntry(outputs, witness)
            return True
        if witness < present.witness:
            self._entries[key] = PoolEntry(present.outputs, witness)
        return False

    def __len__(self):
        return len(self._entries)

    def __iter__(self) -> Iterator[PoolEntry]:
        return iter(list(self._entries.values()))

    def __contains__(self, outputs: OutputSet) -> bool:
        return dedup_key(outputs) in self._entries

    @property
    def entries(self) -> List[PoolEntry]:
        return list(self._entries.values())

    def sortedEntries(self) -> List[PoolEntry]:
        return sorted(self._entries.values(), key=PoolEntry.sortKey)


def _subsumedBy(candidate: Profile, survivors: Sequence[Tuple[Profile, Profile]]) -> bool:
    for plain, reflected in survivors:
        if _searchPermutation(plain, candidate) is not None or _searchPermutation(reflected, candidate) is not None:
            return True
    return False


_WORKER_PROFILES: List[Tuple[Profile, Profile]] = []


def _initMinimizeWorker(sets: List[OutputSet]):
    global _WORKER_PROFILES
    _WORKER_PROFILES = [(Profile(s), Profile(reflect_set(s))) for s in sets]


def _markChunk(task) -> Tuple[List[bool], float]:
    candidates, survivors = task
    started = time.process_time()
    pairs = [_WORKER_PROFILES[j] for j in survivors]
    marks = [_subsumedBy(_WORKER_PROFILES[i][0], pairs) for i in candidates]
    return marks, time.process_time() - started


def minimize(
    pool: CandidatePool,
    workers: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
    cpuClock: Optional[List[float]] = None,
) -> CandidatePool:
    """
    Removes every entry subsumed (up to permutation and reflection) by
    another entry; of each class of mutually subsuming entries the one with
    the least witness survives.

    Entries are visited by ascending cardinality, then witness; only earlier
    entries can subsume later ones, so an entry survives iff no surviving
    earlier entry subsumes it. With several workers the entries are marked
    in batches against the survivors so far and each batch is swept
    sequentially, which yields exactly the sequential result. A worker that
    dies (the OOM killer, a signal) raises :class:`SearchExhausted`.
    """
    ordered = pool.sortedEntries()
    total = len(ordered)
    survivors: List[int] = []
    if workers <= 1 or total < 2 * workers:
        profiles: List[Tuple[Profile, Profile]] = []
        for index, entry in enumerate(ordered):
            plain = Profile(entry.outputs)
            if not _subsumedBy(plain, profiles):
                survivors.append(index)
                profiles.append((plain, Profile(reflect_set(entry.outputs))))
            if progress is not None:
                progress(index + 1, total)
    else:
        sets = [entry.outputs for entry in ordered]
        profiles = [(Profile(s), Profile(reflect_set(s))) for s in sets]
        batchSize = max(64, 16 * workers)
        try:
            with ProcessPoolExecutor(max_workers=workers, initializer=_initMinimizeWorker, initargs=(sets,)) as executor:
                for start in range(0, total, batchSize):
                    batch = list(range(start, min(start + batchSize, total)))
                    chunks = [batch[k::workers] for k in range(workers) if batch[k::workers]]
                    results = executor.map(_markChunk, [(chunk, list(survivors)) for chunk in chunks])
                    marked: Dict[int, bool] = {}
                    for chunk, (marks, cpu) in zip(chunks, results):
                        marked.update(zip(chunk, marks))
                        if cpuClock is not None:
                            cpuClock[0] += cpu
                    fresh: List[Tuple[Profile, Profile]] = []
                    for index in batch:
                        if marked[index] or _subsumedBy(profiles[index][0], fresh):
                            continue
                        survivors.append(index)
                        fresh.append(profiles[index])
                    if progress is not None:
                        progress(batch[-1] + 1, total)
        except BrokenProcessPool as exc:
            raise SearchExhausted(f"a worker died while minimising {total} sets for n={pool.n}") from exc
    return CandidatePool(pool.n, [ordered[i] for i in survivors])
