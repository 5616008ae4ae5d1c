#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Exhaustive ground truth for small channel counts.

Nothing in here uses subsumption or the last-level pruning, so the results
can be held against the fast search. Every oracle refuses sizes it cannot
handle in reasonable time instead of answering partially.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from .network import Level, Network, channelBit, enumerate_levels, evaluate_all
from .outset import OutputSet, dedup_key, extend, full_set, is_sorted_set, output_set, weightTable
from .prune import ChannelSets
from .subsume import OracleRefusal, naive_permutation_subsumes, naive_subsumes  # noqa: F401


TRACE_LIMIT = 12
"""Largest n accepted by :py:func:`trace_from_to_reach`"""
OPTIMAL_LIMIT = 6
"""Largest n accepted by :py:func:`brute_force_optimal_depth`"""


class TraceResult(ChannelSets):
    """From, To and Reach sets obtained by tracing pairs of inputs through a network"""


def trace_from_to_reach(network: Network) -> TraceResult:
    """
    Feeds every pair of inputs (v, w) that differ in one bit, the one being
    in v, through the network. Their outputs differ in at most one channel
    j, and then the value at j has to reach dest(v).
    """
    n = network.n
    if n > TRACE_LIMIT:
        raise OracleRefusal(f"trace oracle refused for n={n} > {TRACE_LIMIT}")
    outputs = evaluate_all(network)
    inputs = np.arange(1 << n, dtype=np.int64)
    targets = n - weightTable(n) + 1
    from_ = [0] * n
    to = [0] * n
    for channel in range(1, n + 1):
        bit = channelBit(channel, n)
        v = inputs[(inputs & bit) != 0]
        diff = outputs[v] ^ outputs[v ^ bit]
        for j in range(1, n + 1):
            hit = diff == channelBit(j, n)
            for target in np.unique(targets[v[hit]]):
                target = int(target)
                to[j - 1] |= 1 << (target - 1)
                from_[target - 1] |= 1 << (j - 1)
    reach = tuple(from_[c] | to[c] | (1 << c) for c in range(n))
    return TraceResult(n, tuple(from_), tuple(to), reach)


def _checkExtensionSize(n: int, k: int):
    if not (n <= 6 and k <= 3) and not (n <= 7 and k <= 2):
        raise OracleRefusal(f"exhaustive extension refused for n={n}, k={k}")


def brute_force_suffix(network: Network, k: int) -> Optional[Network]:
    """
    The least k-level network that sorts after ``network`` (compared level by
    level in canonical order), or None if there is none.
    """
    n = network.n
    _checkExtensionSize(n, k)
    levels = enumerate_levels(n)
    frontier: Dict[object, Tuple[OutputSet, Tuple[Level, ...]]] = {}
    start = output_set(network)
    frontier[dedup_key(start)] = (start, ())
    for step in range(k):
        following: Dict[object, Tuple[OutputSet, Tuple[Level, ...]]] = {}
        for outputs, suffix in frontier.values():
            for level in levels:
                extended = extend(outputs, level)
                key = dedup_key(extended)
                path = suffix + (level,)
                if key not in following or path < following[key][1]:
                    following[key] = (extended, path)
        frontier = following
    found = [suffix for outputs, suffix in frontier.values() if is_sorted_set(outputs)]
    if not found:
        return None
    return Network(n, min(found))


def brute_force_extendable(network: Network, k: int) -> bool:
    """True iff some k levels appended to ``network`` make it sort"""
    return brute_force_suffix(network, k) is not None


def brute_force_optimal_depth(n: int) -> int:
    """Breadth-first search over raw output sets, distinct by bitmap only"""
    if n > OPTIMAL_LIMIT:
        raise OracleRefusal(f"exhaustive optimal depth refused for n={n} > {OPTIMAL_LIMIT}")
    levels = enumerate_levels(n)
    start = full_set(n)
    frontier = {dedup_key(start): start}
    seen = set(frontier)
    depth = 0
    while not any(is_sorted_set(outputs) for outputs in frontier.values()):
        following = {}
        for outputs in frontier.values():
            for level in levels:
                extended = extend(outputs, level)
                key = dedup_key(extended)
                if key not in seen:
                    seen.add(key)
                    following[key] = extended
        frontier = following
        depth += 1
    return depth


def brute_force_exists(n: int, d: int) -> bool:
    """Whether an n-input sorting network of depth d exists, by the same search"""
    return brute_force_optimal_depth(n) <= d
