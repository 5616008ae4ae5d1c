#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Output sets: the image of all 2^n binary inputs under a comparator network.
(see :py:class:`OutputSet`)
"""

from typing import Hashable, Iterator

import functools

import numpy as np

from .network import Level, Network, applyLevelToArray, MAX_CHANNELS


class OutputSetFormatError(ValueError):
    """A malformed serialized output set"""


@functools.lru_cache(maxsize=None)
def weightTable(n: int) -> np.ndarray:
    """Popcount of every n-bit word"""
    codes = np.arange(1 << n, dtype=np.int64)
    weights = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        weights += (codes >> bit) & 1
    weights.flags.writeable = False
    return weights


@functools.lru_cache(maxsize=None)
def reflectionTable(n: int) -> np.ndarray:
    """For every word x, the complemented reversal of x"""
    codes = np.arange(1 << n, dtype=np.int64)
    complement = codes ^ ((1 << n) - 1)
    reflected = np.zeros(1 << n, dtype=np.int64)
    for bit in range(n):
        reflected |= ((complement >> bit) & 1) << (n - 1 - bit)
    reflected.flags.writeable = False
    return reflected


class OutputSet:
    """
    A set of n-bit words stored as a membership bitmap over all 2^n codes.

    Instances are immutable. The sorted member codes, the cardinality and
    the number of members of every weight are computed once on construction.
    """

    __slots__ = ("n", "members", "codes", "cardinality", "weight_counts", "_key")

    def __init__(self, n: int, members: np.ndarray):
        if not 1 <= n <= MAX_CHANNELS:
            raise ValueError(f"channel count {n} is outside 1..{MAX_CHANNELS}")
        members = np.asarray(members, dtype=bool)
        if members.shape != (1 << n,):
            raise ValueError(f"membership bitmap of shape {members.shape} does not fit n={n}")
        members.flags.writeable = False
        self.n = n
        """The number of channels"""
        self.members = members
        """Membership bitmap indexed by word"""
        self.codes = np.flatnonzero(members).astype(np.int64)
        """Ascending member words"""
        self.codes.flags.writeable = False
        self.cardinality = int(self.codes.size)
        """Number of members"""
        self.weight_counts = np.bincount(weightTable(n)[self.codes], minlength=n + 1)
        """Number of members per weight 0..n"""
        self.weight_counts.flags.writeable = False
        self._key = None

    @staticmethod
    def from_codes(n: int, codes) -> "OutputSet":
        members = np.zeros(1 << n, dtype=bool)
        members[np.asarray(codes, dtype=np.int64)] = True
        return OutputSet(n, members)

    def __len__(self):
        return self.cardinality

    def __contains__(self, x: int) -> bool:
        return 0 <= x < (1 << self.n) and bool(self.members[x])

    def __iter__(self) -> Iterator[int]:
        return (int(x) for x in self.codes)

    def __eq__(self, other):
        if not isinstance(other, OutputSet):
            return NotImplemented
        return self.n == other.n and self.cardinality == other.cardinality and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash(dedup_key(self))

    def __reduce__(self):
        return (OutputSet.from_codes, (self.n, np.asarray(self.codes)))

    def __repr__(self):
        return f"OutputSet(n={self.n}, cardinality={self.cardinality})"

    def issubset(self, other: "OutputSet") -> bool:
        return bool(np.all(other.members[self.codes]))


def full_set(n: int) -> OutputSet:
    """The output set of the empty network: every word"""
    return OutputSet(n, np.ones(1 << n, dtype=bool))


def sorted_set(n: int) -> OutputSet:
    """T_n, the n + 1 sorted words"""
    return OutputSet.from_codes(n, [(1 << k) - 1 for k in range(n + 1)])


def extend(outputs: OutputSet, level: Level) -> OutputSet:
    """The output set after appending ``level``"""
    if len(level) == 0:
        return outputs
    return OutputSet.from_codes(outputs.n, applyLevelToArray(outputs.codes, level, outputs.n))


def output_set(network: Network) -> OutputSet:
    """S_C, built by extending the full set one level at a time"""
    outputs = full_set(network.n)
    for level in network.levels:
        outputs = extend(outputs, level)
    return outputs


def reflect_set(outputs: OutputSet) -> OutputSet:
    """Complement-and-reverse every member"""
    return OutputSet.from_codes(outputs.n, reflectionTable(outputs.n)[outputs.codes])


def is_sorted_set(outputs: OutputSet) -> bool:
    """True iff the set is exactly T_n (for sets produced by networks)"""
    return outputs.cardinality == outputs.n + 1


def dedup_key(outputs: OutputSet) -> Hashable:
    """
    Key identifying an output set exactly: the packed membership bitmap.

    Equal keys mean equal sets, so dictionary lookups need no further
    comparison beyond what ``bytes.__eq__`` already does on hash collisions.
    """
    if outputs._key is None:
        outputs._key = (outputs.n, np.packbits(outputs.members).tobytes())
    return outputs._key


def serialize_set(outputs: OutputSet) -> str:
    """``n=<n> count=<c>`` followed by the members as ascending hex codes"""
    lines = [f"n={outputs.n} count={outputs.cardinality}"]
    lines.extend(format(int(x), "x") for x in outputs.codes)
    return "\n".join(lines) + "\n"


def parseSetHeader(line: str):
    fields = dict(field.split("=", 1) for field in line.split() if "=" in field)
    try:
        return int(fields["n"]), int(fields["count"])
    except (KeyError, ValueError):
        raise OutputSetFormatError(f"bad output set header '{line}'") from None


def deserialize_set(text: str) -> OutputSet:
    """Inverse of :py:func:`serialize_set`"""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise OutputSetFormatError("empty output set text")
    n, count = parseSetHeader(lines[0])
    return decodeMembers(n, count, lines[1:])


def decodeMembers(n: int, count: int, lines) -> OutputSet:
    if len(lines) != count:
        raise OutputSetFormatError(f"expected {count} members, found {len(lines)}")
    try:
        codes = [int(line, 16) for line in lines]
    except ValueError as exc:
        raise OutputSetFormatError(f"bad member code: {exc}") from None
    if any(b <= a for a, b in zip(codes, codes[1:])):
        raise OutputSetFormatError("member codes are not strictly ascending")
    if codes and (codes[0] < 0 or codes[-1] >= (1 << n)):
        raise OutputSetFormatError(f"member code outside the {n}-bit range")
    return OutputSet.from_codes(n, codes)
