#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import json
import os
import shutil

import pytest

from sortdepth.checkpoint import (
    CheckpointError,
    checkpoint_load,
    checkpoint_save,
    depthDirectory,
    format_pool,
    latest_checkpoint,
    load_stats,
    parse_pool,
    read_meta,
    saved_depths,
)
from sortdepth.network import Network
from sortdepth.outset import output_set
from sortdepth.search import SearchConfig, exists_sorting_network
from sortdepth.subsume import CandidatePool

from tests.conftest import random_network


def samplePool(rng, n=5, depth=2, size=12):
    pool = CandidatePool(n)
    for _ in range(size):
        network = random_network(rng, n, depth)
        pool.add(output_set(network), network)
    return pool


def test_round_trip(tmp_path, rng):
    pool = samplePool(rng)
    where = checkpoint_save(pool, 2, str(tmp_path), target=4, stats=[{"depth": 1}, {"depth": 2}])
    assert where == depthDirectory(str(tmp_path), 2)
    loaded = checkpoint_load(str(tmp_path), 2, n=5, target=4, screen=True)
    assert loaded.entries == pool.entries
    assert load_stats(str(tmp_path), 2) == [{"depth": 1}, {"depth": 2}]
    meta = read_meta(os.path.join(where, "meta.txt"))
    assert meta["count"] == str(len(pool))
    assert meta["n"] == "5"
    assert not any(name.endswith(".tmp") for name in os.listdir(where))


def test_format_is_framed(batcher4):
    pool = CandidatePool(4)
    pool.add(output_set(batcher4), batcher4)
    text = format_pool(pool)
    assert text.startswith("entry 0\nn=4\n1:2 3:4\n")
    assert parse_pool(text, 4, 3).entries == pool.entries


def test_empty_pool(tmp_path):
    checkpoint_save(CandidatePool(4), 1, str(tmp_path))
    assert len(checkpoint_load(str(tmp_path), 1)) == 0


@pytest.mark.parametrize(
    "expectation",
    [dict(n=6), dict(target=5), dict(screen=False)],
)
def test_rejects_other_searches(tmp_path, rng, expectation):
    checkpoint_save(samplePool(rng), 2, str(tmp_path), target=4)
    with pytest.raises(CheckpointError):
        checkpoint_load(str(tmp_path), 2, **expectation)


def test_detects_modified_pool(tmp_path, rng):
    where = checkpoint_save(samplePool(rng), 2, str(tmp_path))
    path = os.path.join(where, "pool.txt")
    with open(path) as fileHnd:
        text = fileHnd.read()
    with open(path, "w") as fileHnd:
        fileHnd.write(text[: len(text) // 2])
    with pytest.raises(CheckpointError, match="checksum"):
        checkpoint_load(str(tmp_path), 2)


def test_incomplete_directory(tmp_path, rng):
    where = checkpoint_save(samplePool(rng), 2, str(tmp_path))
    os.remove(os.path.join(where, "meta.txt"))
    with pytest.raises(CheckpointError, match="no complete checkpoint"):
        checkpoint_load(str(tmp_path), 2)
    assert latest_checkpoint(str(tmp_path), 5, 2, True) is None


def test_wrong_version(tmp_path, rng):
    where = checkpoint_save(samplePool(rng), 2, str(tmp_path))
    path = os.path.join(where, "meta.txt")
    with open(path) as fileHnd:
        text = fileHnd.read()
    with open(path, "w") as fileHnd:
        fileHnd.write(text.replace("version=1", "version=99"))
    with pytest.raises(CheckpointError, match="format version"):
        checkpoint_load(str(tmp_path), 2)


@pytest.mark.parametrize(
    "text, message",
    [
        ("entry 1\n", "expected 'entry 0'"),
        ("entry 0\nn=4\n", "truncated"),
        ("entry 0\nn=4\n1:2\nn=4 count=1\nzz\n", "corrupt"),
        ("entry 0\nn=4\n1:2\nn=4 count=16\n" + "".join(f"{x:x}\n" for x in range(16)), "witness"),
    ],
)
def test_parse_pool_errors(text, message):
    with pytest.raises(CheckpointError, match=message):
        parse_pool(text, 4, 1)


def test_parse_pool_depth_mismatch():
    network = Network(4)
    pool = CandidatePool(4)
    pool.add(output_set(network), network)
    with pytest.raises(CheckpointError):
        parse_pool(format_pool(pool), 5, 0)


def test_saved_depths(tmp_path, rng):
    assert saved_depths(str(tmp_path / "missing")) == []
    for depth in (1, 3, 2):
        checkpoint_save(samplePool(rng, depth=depth), depth, str(tmp_path), target=3)
    os.makedirs(tmp_path / "unrelated")
    assert saved_depths(str(tmp_path)) == [3, 2, 1]
    depth, pool, _ = latest_checkpoint(str(tmp_path), 5, 3, True)
    assert depth == 3
    assert latest_checkpoint(str(tmp_path), 5, 2, True) is None
    assert latest_checkpoint(str(tmp_path), 6, 3, True) is None


def test_search_writes_every_depth(tmp_path):
    outcome = exists_sorting_network(SearchConfig(4, 3, checkpoint_directory=str(tmp_path)))
    assert saved_depths(str(tmp_path)) == [3, 2, 1]
    stats = load_stats(str(tmp_path), 3)
    assert [row["depth"] for row in stats] == [1, 2, 3]
    assert [row["minimized_count"] for row in stats] == [row.minimized_count for row in outcome.stats.depths]
    with open(os.path.join(depthDirectory(str(tmp_path), 3), "stats.json")) as fileHnd:
        assert json.load(fileHnd) == stats


def test_resume_matches_uninterrupted_run(tmp_path):
    whole = exists_sorting_network(SearchConfig(4, 3, checkpoint_directory=str(tmp_path)))
    # pretend the run was interrupted after the first depth
    shutil.rmtree(depthDirectory(str(tmp_path), 3))
    shutil.rmtree(depthDirectory(str(tmp_path), 2))
    resumed = exists_sorting_network(SearchConfig(4, 3, checkpoint_directory=str(tmp_path), resume=True))
    assert resumed.resumed_from == 1
    assert resumed.exists == whole.exists
    assert resumed.witness == whole.witness
    assert [row.minimized_count for row in resumed.stats.depths] == [row.minimized_count for row in whole.stats.depths]
    assert saved_depths(str(tmp_path)) == [3, 2, 1]


def test_resume_without_checkpoints_starts_over(tmp_path):
    outcome = exists_sorting_network(SearchConfig(3, 3, checkpoint_directory=str(tmp_path), resume=True))
    assert outcome.resumed_from is None
    assert outcome.exists


def test_meta_records_the_minimisation_depth(tmp_path, rng):
    where = checkpoint_save(samplePool(rng), 2, str(tmp_path), target=4, minimize_through=2)
    assert read_meta(os.path.join(where, "meta.txt"))["minimize_through"] == "2"
    assert len(checkpoint_load(str(tmp_path), 2, minimize_through=2)) > 0
    with pytest.raises(CheckpointError, match="minimize_through"):
        checkpoint_load(str(tmp_path), 2, minimize_through=1)
    assert latest_checkpoint(str(tmp_path), 5, 4, True, minimize_through=1) is None
    assert latest_checkpoint(str(tmp_path), 5, 4, True, minimize_through=2)[0] == 2


def test_resume_ignores_other_minimisation_depths(tmp_path):
    directory = str(tmp_path)
    exists_sorting_network(SearchConfig(4, 3, minimize_through_depth=1, checkpoint_directory=directory))
    same = exists_sorting_network(SearchConfig(4, 3, minimize_through_depth=1, checkpoint_directory=directory, resume=True))
    assert same.resumed_from == 3
    other = exists_sorting_network(SearchConfig(4, 3, checkpoint_directory=directory, resume=True))
    assert other.resumed_from is None
    assert other.exists
    assert all(row.minimized for row in other.stats.depths)


def test_resume_ignores_other_targets(tmp_path):
    exists_sorting_network(SearchConfig(4, 2, checkpoint_directory=str(tmp_path)))
    outcome = exists_sorting_network(SearchConfig(4, 3, checkpoint_directory=str(tmp_path), resume=True))
    assert outcome.resumed_from is None
    assert outcome.exists
