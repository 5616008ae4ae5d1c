#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import numpy as np
import pytest

from sortdepth.network import Level, Network, concat, enumerate_levels, parse_word, reflect_network
from sortdepth.outset import (
    OutputSet,
    OutputSetFormatError,
    dedup_key,
    deserialize_set,
    extend,
    full_set,
    is_sorted_set,
    output_set,
    reflect_set,
    serialize_set,
    sorted_set,
)

from tests.conftest import random_network


def test_output_set_examples(batcher4):
    assert output_set(Network(3)).cardinality == 8
    assert output_set(batcher4) == sorted_set(4)
    assert list(output_set(batcher4)) == [0b0000, 0b0001, 0b0011, 0b0111, 0b1111]
    assert list(output_set(Network(2, (Level.of((1, 2)),)))) == [0b00, 0b01, 0b11]


def test_invariants_of_network_outputs(rng):
    for _ in range(50):
        n = rng.randint(2, 8)
        outputs = output_set(random_network(rng, n, rng.randint(0, 4)))
        assert sorted_set(n).issubset(outputs)
        assert n + 1 <= outputs.cardinality <= 1 << n
        assert outputs.weight_counts.sum() == outputs.cardinality
        assert np.all(outputs.weight_counts >= 1)


def test_extend(rng):
    outputs = output_set(random_network(rng, 5, 2))
    assert extend(outputs, Level()) is outputs
    for _ in range(200):
        n = rng.randint(2, 8)
        prefix = random_network(rng, n, rng.randint(0, 3))
        level = rng.choice(enumerate_levels(n))
        before = output_set(prefix)
        after = extend(before, level)
        assert after == output_set(concat(prefix, level))
        assert after.cardinality <= before.cardinality
        assert np.all(after.weight_counts <= before.weight_counts)


def test_reflect_set(rng):
    single = OutputSet.from_codes(4, [parse_word("0011")])
    assert reflect_set(single) == single
    for _ in range(30):
        network = random_network(rng, 6, 3)
        outputs = output_set(network)
        assert reflect_set(reflect_set(outputs)) == outputs
        assert reflect_set(outputs) == output_set(reflect_network(network))
        assert list(reflect_set(outputs).weight_counts) == list(outputs.weight_counts[::-1])


def test_is_sorted_set(batcher4):
    assert is_sorted_set(output_set(batcher4))
    assert not is_sorted_set(output_set(Network(2)))
    assert is_sorted_set(sorted_set(7))


def test_dedup_key():
    first = output_set(Network(3, (Level.of((1, 2)),)))
    again = OutputSet.from_codes(3, list(first))
    other = output_set(Network(3, (Level.of((2, 3)),)))
    assert dedup_key(first) == dedup_key(again)
    assert dedup_key(first) != dedup_key(other)
    assert len({first, again, other}) == 2


def test_serialization(batcher4):
    text = serialize_set(output_set(batcher4))
    assert text == "n=4 count=5\n0\n1\n3\n7\nf\n"
    assert deserialize_set(text) == sorted_set(4)
    assert deserialize_set(serialize_set(full_set(5))) == full_set(5)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "count=2\n0\n1\n",
        "n=2 count=3\n0\n1\n",
        "n=2 count=2\n1\n0\n",
        "n=2 count=2\n0\n4\n",
        "n=2 count=1\nzz\n",
    ],
)
def test_malformed_serialization(text):
    with pytest.raises(OutputSetFormatError):
        deserialize_set(text)


def test_read_only():
    outputs = full_set(3)
    with pytest.raises(ValueError):
        outputs.members[0] = False
