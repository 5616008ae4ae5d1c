#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Structural model of comparator networks. (see :py:class:`Network`)

Inputs and outputs are binary words of n bits, stored as machine integers.
Channel ``c`` (1-based, channel 1 is the leftmost coordinate x_1) lives in
bit ``n - c`` of the integer, so the binary literal of a word reads exactly
like its bit string: ``0b0101`` is x_1 = 0, x_2 = 1, x_3 = 0, x_4 = 1.
The sorted word of weight k is therefore ``2**k - 1``.

Every module of the package uses this convention.
"""

from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import functools

from dataclasses import dataclass

import numpy as np


MAX_CHANNELS = 16
"""Largest supported channel count"""


class NetworkError(ValueError):
    """An invalid comparator, level or network"""


def channelBit(channel: int, n: int) -> int:
    """The bit mask carrying ``channel`` in an n-bit word"""
    return 1 << (n - channel)


def weight(x: int) -> int:
    """Number of ones in the word"""
    return bin(x).count("1")


def word_text(x: int, n: int) -> str:
    """The bit string of a word, x_1 first"""
    return format(x, f"0{n}b")


def parse_word(text: str) -> int:
    """Inverse of :py:func:`word_text`"""
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise NetworkError(f"'{text}' is not a binary word")
    return int(text, 2)


@dataclass(frozen=True, order=True)
class Comparator:
    """
    A min-max comparator: after it fires, channel ``lo`` carries the
    minimum and channel ``hi`` the maximum of the two values.
    """

    lo: int
    """The channel receiving the minimum"""
    hi: int
    """The channel receiving the maximum"""

    def __post_init__(self):
        if not 1 <= self.lo < self.hi:
            raise NetworkError(f"comparator {self.lo}:{self.hi} needs 1 <= lo < hi")

    def reflect(self, n: int) -> "Comparator":
        return Comparator(n - self.hi + 1, n - self.lo + 1)

    def __str__(self):
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True, order=True)
class Level:
    """
    A set of comparators on pairwise distinct channels, fired in parallel.

    Comparators are kept sorted by ``lo``; two levels compare
    lexicographically by their comparators.
    """

    comparators: Tuple[Comparator, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.comparators))
        seen = set()
        for comp in ordered:
            for channel in (comp.lo, comp.hi):
                if channel in seen:
                    raise NetworkError(f"channel {channel} is used twice in level {' '.join(map(str, ordered))}")
                seen.add(channel)
        object.__setattr__(self, "comparators", ordered)

    @staticmethod
    def of(*pairs: Tuple[int, int]) -> "Level":
        """Builds a level from ``(lo, hi)`` tuples"""
        return Level(tuple(Comparator(lo, hi) for lo, hi in pairs))

    def __len__(self):
        return len(self.comparators)

    def __iter__(self) -> Iterator[Comparator]:
        return iter(self.comparators)

    @property
    def channels(self) -> List[int]:
        return [channel for comp in self.comparators for channel in (comp.lo, comp.hi)]

    def maxChannel(self) -> int:
        return max(self.channels, default=0)

    def reflect(self, n: int) -> "Level":
        return Level(tuple(comp.reflect(n) for comp in self.comparators))

    def __str__(self):
        return " ".join(str(comp) for comp in self.comparators)


@dataclass(frozen=True, order=True)
class Network:
    """
    An n-input comparator network: a sequence of levels applied first to last.
    """

    n: int
    """The number of channels"""
    levels: Tuple[Level, ...] = ()
    """The levels, level 1 first"""

    def __post_init__(self):
        if not 2 <= self.n <= MAX_CHANNELS:
            raise NetworkError(f"channel count {self.n} is outside 2..{MAX_CHANNELS}")
        object.__setattr__(self, "levels", tuple(self.levels))
        for level in self.levels:
            if level.maxChannel() > self.n:
                raise NetworkError(f"level {level} uses a channel beyond n={self.n}")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def size(self) -> int:
        """The number of comparators"""
        return sum(len(level) for level in self.levels)

    def prefix(self, depth: int) -> "Network":
        """The first ``depth`` levels"""
        return Network(self.n, self.levels[:depth])

    def __str__(self):
        return f"Network(n={self.n}, depth={self.depth}: {' | '.join(str(level) for level in self.levels)})"


def apply_level(x: int, level: Level, n: int) -> int:
    """Fires all comparators of ``level`` on the word ``x``"""
    for comp in level:
        lo = channelBit(comp.lo, n)
        hi = channelBit(comp.hi, n)
        if x & lo and not x & hi:
            x ^= lo | hi
    return x


def applyLevelToArray(codes: np.ndarray, level: Level, n: int) -> np.ndarray:
    """Vectorised :py:func:`apply_level` over an array of words"""
    codes = codes.copy()
    for comp in level:
        lo = channelBit(comp.lo, n)
        hi = channelBit(comp.hi, n)
        swap = ((codes & lo) != 0) & ((codes & hi) == 0)
        codes[swap] ^= lo | hi
    return codes


def evaluate(network: Network, x: int) -> int:
    """The output of ``network`` on the input word ``x``"""
    for level in network.levels:
        x = apply_level(x, level, network.n)
    return x


def evaluate_all(network: Network) -> np.ndarray:
    """Outputs of ``network`` for all 2^n inputs, indexed by input"""
    codes = np.arange(1 << network.n, dtype=np.int64)
    for level in network.levels:
        codes = applyLevelToArray(codes, level, network.n)
    return codes


def is_sorted(x: int, n: int) -> bool:
    """True iff all zeros precede all ones"""
    return x & (x + 1) == 0


def is_sorting_network(network: Network) -> bool:
    """Zero-one principle: the network sorts iff it sorts every binary word"""
    outputs = evaluate_all(network)
    return bool(np.all((outputs & (outputs + 1)) == 0))


def reflect_network(network: Network) -> Network:
    return Network(network.n, tuple(level.reflect(network.n) for level in network.levels))


def concat(first: Network, second: Union[Network, Level]) -> Network:
    """``first`` followed by ``second`` (a network or a single level)"""
    if isinstance(second, Level):
        return Network(first.n, first.levels + (second,))
    if first.n != second.n:
        raise NetworkError(f"cannot concatenate networks on {first.n} and {second.n} channels")
    return Network(first.n, first.levels + second.levels)


def _matchings(channels: Sequence[int]) -> Iterator[List[Comparator]]:
    """All sets of disjoint comparators over ``channels`` (ascending)"""
    if len(channels) == 0:
        yield []
        return
    first, rest = channels[0], channels[1:]
    for matching in _matchings(rest):
        yield matching
    for i, partner in enumerate(rest):
        for matching in _matchings(rest[:i] + rest[i + 1 :]):
            yield [Comparator(first, partner)] + matching


@functools.lru_cache(maxsize=None)
def _levelsFor(n: int) -> Tuple[Level, ...]:
    return tuple(sorted(Level(tuple(m)) for m in _matchings(list(range(1, n + 1)))))


def enumerate_levels(n: int) -> List[Level]:
    """
    All levels on n channels (every matching, the empty level included),
    in canonical order. The count is the involution number I(n).
    """
    if not 2 <= n <= MAX_CHANNELS:
        raise NetworkError(f"channel count {n} is outside 2..{MAX_CHANNELS}")
    return list(_levelsFor(n))


def enumerate_comparators(n: int) -> List[Comparator]:
    return [Comparator(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def batcher_network(n: int) -> Network:
    """
    Batcher's odd-even merge sort on n channels, each comparator placed in
    the earliest level where both of its channels are free.
    """
    comparators: List[Tuple[int, int]] = []
    p = 1
    while p < n:
        k = p
        while k >= 1:
            j = k % p
            while j <= n - 1 - k:
                for i in range(min(k - 1, n - j - k - 1) + 1):
                    if (i + j) // (2 * p) == (i + j + k) // (2 * p):
                        comparators.append((i + j + 1, i + j + k + 1))
                j += 2 * k
            k //= 2
        p *= 2

    busy = [0] * (n + 1)
    levels: List[List[Tuple[int, int]]] = []
    for lo, hi in comparators:
        depth = max(busy[lo], busy[hi])
        if depth == len(levels):
            levels.append([])
        levels[depth].append((lo, hi))
        busy[lo] = busy[hi] = depth + 1
    return Network(n, tuple(Level.of(*pairs) for pairs in levels))


def network_from_pairs(n: int, levels: Iterable[Iterable[Tuple[int, int]]]) -> Network:
    """Convenience constructor from nested ``(lo, hi)`` tuples"""
    return Network(n, tuple(Level.of(*pairs) for pairs in levels))
