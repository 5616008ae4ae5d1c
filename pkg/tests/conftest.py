#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Shared fixtures: known networks and a seeded source of random prefixes.
"""

import random

import pytest

from sortdepth.network import Network, batcher_network, enumerate_levels, network_from_pairs
from sortdepth.utils import TermColor, logger


BATCHER4_TEXT = "n=4\n1:2 3:4\n1:3 2:4\n2:3\n"


def random_network(rng: random.Random, n: int, depth: int) -> Network:
    levels = enumerate_levels(n)
    return Network(n, tuple(rng.choice(levels) for _ in range(depth)))


@pytest.fixture
def batcher4() -> Network:
    return network_from_pairs(4, [[(1, 2), (3, 4)], [(1, 3), (2, 4)], [(2, 3)]])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240605)


@pytest.fixture
def known_sorting_networks():
    """Batcher's network for every n from 2 to 10"""
    return [batcher_network(n) for n in range(2, 11)]


@pytest.fixture(autouse=True)
def plainLogger():
    TermColor.active = False
    logger.clear()
    logger.autoflush = False
    logger.quiet = False
    yield
    logger.clear()
    logger.autoflush = False
    logger.quiet = False
