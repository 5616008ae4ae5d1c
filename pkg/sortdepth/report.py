#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
The machine readable statistics of a run, written as one JSON document.

Besides the per-depth funnel every search carries a ``summary`` row with the
columns usually tabulated for these searches: the number of minimal sets
after three levels, the survivors of the look-ahead at the fourth-last level,
the sets sortable in three and in two levels, and the run time (summed CPU
seconds of all workers, wall seconds separately).
"""

from typing import Dict, List, Optional

import json
import os
import platform

import numpy as np
import pyparsing

from .search import SearchOutcome, SearchStats

import sortdepth


SCHEMA_VERSION = 1
"""Bumped on incompatible changes of the document layout"""


def summaryRow(stats: SearchStats) -> Dict[str, Optional[float]]:
    def column(depth: int, name: str):
        row = stats.at(depth)
        return getattr(row, name) if row is not None else None

    d = stats.d
    return {
        "r3_count": column(3, "minimized_count"),
        "lookahead_survivors": column(d - 3, "lookahead_survivors"),
        "sortable3": column(d - 3, "sortable_k_survivors"),
        "second_lookahead_survivors": column(d - 2, "lookahead_survivors"),
        "sortable2": column(d - 2, "sortable_k_survivors"),
        "runtime_seconds": stats.cpu_seconds,
        "wall_seconds": stats.elapsed_seconds,
    }


def searchDocument(outcome: SearchOutcome) -> dict:
    stats = outcome.stats
    return {
        "n": stats.n,
        "d": stats.d,
        "exists": outcome.exists,
        "resumed_from": outcome.resumed_from,
        "depths": [row.asDict() for row in stats.depths],
        "summary": summaryRow(stats),
    }


class StatsReport:
    """Collects the searches of one command and renders them as JSON"""

    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = dict(config)
        """Echo of the options the run was started with"""
        self.searches: List[SearchOutcome] = []
        self.result: Dict[str, object] = {}

    def add(self, outcome: SearchOutcome):
        self.searches.append(outcome)

    def asDict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "versions": {
                "sortdepth": sortdepth.__version__,
                "python": platform.python_version(),
                "numpy": np.__version__,
                "pyparsing": pyparsing.__version__,
            },
            "result": self.result,
            "searches": [searchDocument(outcome) for outcome in self.searches],
        }

    def write(self, path: str):
        tmp = path + ".tmp"
        with open(tmp, "w") as fileHnd:
            json.dump(self.asDict(), fileHnd, indent=2)
            fileHnd.write("\n")
        os.replace(tmp, path)
