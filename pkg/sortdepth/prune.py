#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Pruning of the last four levels through From/To/Reach sets.

For a prefix with output set S, two members x and y of S that differ in
exactly one channel i (x carrying the one) prove that channel i still has to
deliver a value to the channel ``dest(x) = n - weight(x) + 1`` where the
distinguishing one ends up in sorted order. A level can move a value to at
most one other channel, so after k remaining levels at most 2^k channels can
be reached; prefixes whose sets are larger cannot be completed in time.

Channel sets are kept as integer masks, bit ``q - 1`` standing for channel q.
"""

from typing import FrozenSet, List, Sequence, Tuple

from dataclasses import dataclass

import numpy as np

from .network import Comparator, Level, channelBit, enumerate_comparators
from .outset import OutputSet, extend, is_sorted_set, weightTable


def _size(mask: int) -> int:
    return bin(mask).count("1")


def mask_channels(mask: int) -> List[int]:
    """The channels contained in a mask, ascending"""
    return [bit + 1 for bit in range(mask.bit_length()) if mask >> bit & 1]


@dataclass(frozen=True)
class ChannelSets:
    """From, To and Reach set of every channel, index ``c - 1`` for channel c"""

    n: int
    from_: Tuple[int, ...]
    to: Tuple[int, ...]
    reach: Tuple[int, ...]

    def fromSize(self, channel: int) -> int:
        return _size(self.from_[channel - 1])

    def toSize(self, channel: int) -> int:
        return _size(self.to[channel - 1])

    def reachSize(self, channel: int) -> int:
        return _size(self.reach[channel - 1])

    def maxSizes(self) -> Tuple[int, int, int]:
        """Largest from, to and reach cardinality over all channels"""
        channels = range(1, self.n + 1)
        return (
            max(self.fromSize(c) for c in channels),
            max(self.toSize(c) for c in channels),
            max(self.reachSize(c) for c in channels),
        )

    def issubset(self, other: "ChannelSets") -> bool:
        """Channel-wise containment of all three families"""
        return all(
            mine & ~theirs == 0
            for family, others in ((self.from_, other.from_), (self.to, other.to), (self.reach, other.reach))
            for mine, theirs in zip(family, others)
        )

    @staticmethod
    def build(n: int, from_: Sequence[int], to: Sequence[int]) -> "ChannelSets":
        reach = tuple(from_[c] | to[c] | (1 << c) for c in range(n))
        return ChannelSets(n, tuple(from_), tuple(to), reach)


def dest(x: int, n: int) -> int:
    """The output channel of the distinguishing one of a weight-k word"""
    return n - bin(x).count("1") + 1


def from_to_reach(outputs: OutputSet) -> ChannelSets:
    """
    Collects From, To and Reach by flipping every set bit of every member
    and looking the neighbour up in the membership bitmap.
    """
    n = outputs.n
    codes = outputs.codes
    weights = weightTable(n)
    from_ = [0] * n
    to = [0] * n
    for channel in range(1, n + 1):
        bit = channelBit(channel, n)
        x = codes[(codes & bit) != 0]
        x = x[outputs.members[x ^ bit]]
        for target in np.unique(n - weights[x] + 1):
            target = int(target)
            to[channel - 1] |= 1 << (target - 1)
            from_[target - 1] |= 1 << (channel - 1)
    return ChannelSets.build(n, from_, to)


def sortable_in_one(outputs: OutputSet) -> bool:
    """With one level left every channel talks to itself and its partner only"""
    sets = from_to_reach(outputs)
    fromMax, toMax, reachMax = sets.maxSizes()
    return fromMax <= 2 and toMax <= 2 and reachMax <= 2


def sortable_in_two(outputs: OutputSet) -> bool:
    sets = from_to_reach(outputs)
    fromMax, toMax, reachMax = sets.maxSizes()
    return fromMax <= 4 and toMax <= 4 and reachMax <= 5


def sortable_in_three(outputs: OutputSet) -> bool:
    # no reach bound with three levels left
    sets = from_to_reach(outputs)
    fromMax, toMax, _ = sets.maxSizes()
    return fromMax <= 8 and toMax <= 8


def sortable_within(outputs: OutputSet, remaining: int) -> bool:
    """Necessary condition for sorting ``outputs`` with ``remaining`` more levels"""
    if remaining <= 0:
        return is_sorted_set(outputs)
    if remaining == 1:
        return sortable_in_one(outputs)
    if remaining == 2:
        return sortable_in_two(outputs)
    if remaining == 3:
        return sortable_in_three(outputs)
    return True


def rejected_comparators(outputs: OutputSet, bound: int) -> FrozenSet[Comparator]:
    """
    Comparators ⟨a,b⟩ whose single-comparator extension leaves more than
    ``bound`` channels in from[a] or from[b]. The from sets of a and b only
    depend on their pairing, so any level holding such a comparator fails too.
    """
    n = outputs.n
    if bound >= n:
        return frozenset()
    rejected = set()
    for comp in enumerate_comparators(n):
        sets = from_to_reach(extend(outputs, Level((comp,))))
        if sets.fromSize(comp.lo) > bound or sets.fromSize(comp.hi) > bound:
            rejected.add(comp)
    return frozenset(rejected)


def lookahead_levels(outputs: OutputSet, levels: Sequence[Level], bound: int) -> List[Level]:
    """The levels without a comparator rejected by :py:func:`rejected_comparators`"""
    rejected = rejected_comparators(outputs, bound)
    if not rejected:
        return list(levels)
    return [level for level in levels if not any(comp in rejected for comp in level)]


def second_last_levels(outputs: OutputSet, levels: Sequence[Level]) -> List[Level]:
    return [level for level in levels if sortable_in_two(extend(outputs, level))]


def third_last_levels(outputs: OutputSet, levels: Sequence[Level]) -> List[Level]:
    return [level for level in lookahead_levels(outputs, levels, 4) if sortable_in_three(extend(outputs, level))]


def fourth_last_levels(outputs: OutputSet, levels: Sequence[Level]) -> List[Level]:
    return lookahead_levels(outputs, levels, 8)
