#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import os

import pytest

from sortdepth import search
from sortdepth.network import Network, enumerate_levels, is_sorting_network
from sortdepth.outset import full_set, sorted_set
from sortdepth.search import (
    DepthStats,
    SearchConfig,
    depth_searches,
    depth_upper_bound,
    exists_sorting_network,
    generate_next_depth,
    get_all_levels,
    optimal_depth,
)
from sortdepth.subsume import CandidatePool, SearchExhausted
from sortdepth.oracle import brute_force_exists, brute_force_optimal_depth


def funnel(outcome):
    """The statistics without the clocks"""
    return [
        {key: value for key, value in row.asDict().items() if key not in ("elapsed_seconds", "cpu_seconds")}
        for row in outcome.stats.depths
    ]


@pytest.mark.parametrize(
    "n, d, expected",
    [
        (2, 0, False),
        (2, 1, True),
        (3, 2, False),
        (3, 3, True),
        (4, 2, False),
        (4, 3, True),
        (4, 4, True),
        (5, 3, False),
        (5, 4, False),
        (6, 4, False),
    ],
)
def test_exists(n, d, expected):
    outcome = exists_sorting_network(SearchConfig(n, d))
    assert outcome.exists == expected
    if expected:
        assert outcome.witness.depth == d
        assert is_sorting_network(outcome.witness)
    else:
        assert outcome.witness is None


@pytest.mark.parametrize(
    "n, d", [(5, 5), (6, 5), pytest.param(7, 6, marks=pytest.mark.slow), pytest.param(8, 6, marks=pytest.mark.slow)]
)
def test_exists_at_the_optimum(n, d):
    outcome = exists_sorting_network(SearchConfig(n, d))
    assert outcome.exists
    assert is_sorting_network(outcome.witness)


@pytest.mark.slow
@pytest.mark.parametrize("n, d", [(7, 5), (8, 5), (9, 6), (10, 6)])
def test_missing_below_the_optimum(n, d):
    assert not exists_sorting_network(SearchConfig(n, d)).exists


@pytest.mark.parametrize("n", [2, 3, 4])
def test_agrees_with_brute_force(n):
    for d in range(0, 5):
        assert exists_sorting_network(SearchConfig(n, d)).exists == brute_force_exists(n, d), d


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_agrees_with_brute_force_up_to_one_past_the_optimum(n):
    optimum = brute_force_optimal_depth(n)
    for d in range(0, optimum + 2):
        assert exists_sorting_network(SearchConfig(n, d)).exists == (d >= optimum), d


def test_optimal_depth():
    assert optimal_depth(2) == 1
    assert optimal_depth(3) == 3
    assert optimal_depth(4) == 3
    assert optimal_depth(5, d_max=4) is None


@pytest.mark.parametrize(
    "n, expected", [(5, 5), (6, 5), pytest.param(7, 6, marks=pytest.mark.slow), pytest.param(8, 6, marks=pytest.mark.slow)]
)
def test_optimal_depth_known(n, expected):
    assert optimal_depth(n) == expected


def test_depth_searches_stop_at_first_success():
    outcomes = list(depth_searches(4))
    assert [o.stats.d for o in outcomes] == [1, 2, 3]
    assert [o.exists for o in outcomes] == [False, False, True]


def test_depth_upper_bound():
    assert depth_upper_bound(2) == 1
    assert depth_upper_bound(4) == 3
    assert depth_upper_bound(8) == 6


def test_funnel_is_monotone():
    outcome = exists_sorting_network(SearchConfig(5, 4))
    levelCount = len(enumerate_levels(5))
    for row in outcome.stats.depths:
        assert row.generated_count == row.pool_size * levelCount
        assert row.lookahead_survivors <= row.generated_count
        assert row.level_survivors <= row.lookahead_survivors
        assert row.sortable_k_survivors <= row.level_survivors
        assert row.unique_count <= row.sortable_k_survivors
        assert row.minimized_count <= row.unique_count
        assert row.minimized
        assert row.elapsed_seconds >= 0 and row.cpu_seconds >= 0


def test_first_depth_collapses_to_one_set():
    outcome = exists_sorting_network(SearchConfig(4, 3))
    first = outcome.stats.at(1)
    assert first.pool_size == 1
    assert first.generated_count == 10
    assert first.minimized_count == 1


@pytest.mark.parametrize("workers", [2, 3, 4])
def test_worker_count_does_not_change_the_result(workers):
    sequential = exists_sorting_network(SearchConfig(5, 4, worker_count=1))
    parallel = exists_sorting_network(SearchConfig(5, 4, worker_count=workers))
    assert sequential.exists == parallel.exists
    assert funnel(sequential) == funnel(parallel)


@pytest.mark.parametrize("n, d, workers", [(4, 3, 3), (5, 5, 2), (6, 5, 3), (6, 5, 5)])
def test_witness_does_not_depend_on_workers(n, d, workers):
    sequential = exists_sorting_network(SearchConfig(n, d, worker_count=1))
    parallel = exists_sorting_network(SearchConfig(n, d, worker_count=workers))
    assert sequential.witness == parallel.witness
    assert funnel(sequential) == funnel(parallel)


@pytest.mark.slow
@pytest.mark.parametrize("workers", [2, 4, 8])
def test_seven_channels_do_not_depend_on_workers(workers):
    sequential = exists_sorting_network(SearchConfig(7, 6, worker_count=1))
    parallel = exists_sorting_network(SearchConfig(7, 6, worker_count=workers))
    assert sequential.witness == parallel.witness
    assert funnel(sequential) == funnel(parallel)


def killWorker(task):
    # dies without reporting back, like a process the OOM killer took
    os._exit(9)


def test_lost_worker_ends_the_extension(monkeypatch):
    monkeypatch.setattr(search, "_expandTask", killWorker)
    pool = generate_next_depth(CandidatePool.initial(5), 1, 4, screen=False)
    assert len(pool) == len(enumerate_levels(5))
    with pytest.raises(SearchExhausted):
        generate_next_depth(pool, 2, 4, screen=False, workers=2)


def test_lost_worker_ends_the_search(monkeypatch):
    monkeypatch.setattr(search, "_expandTask", killWorker)
    with pytest.raises(SearchExhausted):
        exists_sorting_network(SearchConfig(7, 6, worker_count=2))


def test_minimize_through():
    full = exists_sorting_network(SearchConfig(4, 3))
    partial = exists_sorting_network(SearchConfig(4, 3, minimize_through_depth=1))
    assert partial.exists == full.exists
    assert [row.minimized for row in partial.stats.depths] == [True, False, False]
    assert partial.stats.at(2).minimized_count == partial.stats.at(2).unique_count
    assert partial.stats.at(2).minimized_count >= full.stats.at(2).minimized_count
    assert is_sorting_network(partial.witness)


def test_screen_can_be_disabled():
    screened = exists_sorting_network(SearchConfig(4, 3))
    unscreened = exists_sorting_network(SearchConfig(4, 3, screen=False))
    assert screened.exists and unscreened.exists
    assert is_sorting_network(unscreened.witness)
    assert all(row.sortable_k_survivors == row.level_survivors for row in unscreened.stats.depths)


def test_witness_can_be_suppressed():
    outcome = exists_sorting_network(SearchConfig(3, 3, emit_witness=False))
    assert outcome.exists
    assert outcome.witness is None


def test_progress_messages():
    messages = []
    exists_sorting_network(SearchConfig(4, 3, progress_interval=0), messages.append)
    # the summary of every depth is always reported
    assert len([m for m in messages if m.startswith("depth ") and "minimal sets" in m]) == 3


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=1, d=3),
        dict(n=17, d=3),
        dict(n=4, d=-1),
        dict(n=4, d=3, worker_count=0),
    ],
)
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(**kwargs)


def test_generate_from_sorted_set():
    pool = CandidatePool(5)
    pool.add(sorted_set(5), Network(5))
    stats = DepthStats(depth=1)
    extended = generate_next_depth(pool, 1, 6, stats=stats)
    assert len(extended) == 1
    assert stats.generated_count == len(enumerate_levels(5))
    assert stats.unique_count == 1


def test_get_all_levels_dispatch():
    n = 6
    levels = enumerate_levels(n)
    # five levels left: nothing to prune
    assert get_all_levels(full_set(n), 1, 6) == levels
    # four levels left: the look-ahead bound exceeds the channel count
    assert get_all_levels(full_set(n), 2, 5) == levels
    assert get_all_levels(sorted_set(n), 3, 5) == levels
    assert get_all_levels(sorted_set(n), 4, 5) == levels
    assert len(get_all_levels(full_set(n), 4, 5)) < len(levels)
