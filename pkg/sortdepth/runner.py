#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
The command line front end. (see :py:class:`SearchRunner`)

Results go to standard output, everything else is logged to standard error.
"""

from typing import List, Optional

import os
import argparse

from enum import Enum

from .utils import TermColor, logger, formatCount
from .network import NetworkError, is_sorting_network
from .netformat import format_network, read_network, write_network
from .outset import OutputSetFormatError, output_set
from .checkpoint import CheckpointError
from .search import SearchConfig, SearchExhausted, SearchOutcome, depth_searches, depth_upper_bound, exists_sorting_network
from .subsume import OracleRefusal
from .report import StatsReport, summaryRow

import sortdepth


WORKERS_ENV = "SORTDEPTH_WORKERS"
"""Environment variable holding the default worker count"""


class Verdict(Enum):
    """
    Outcome of a command, doubling as the exit code
    """

    Exists = 0
    """The network exists (or the verified network sorts)"""
    Missing = 1
    """No such network exists (or the verified network does not sort)"""
    Error = 2
    """The command could not be carried out"""

    def __str__(self):
        return {
            Verdict.Exists: TermColor.colorText(" EXISTS ", fg=TermColor.Black, bg=TermColor.Green),
            Verdict.Missing: TermColor.colorText(" MISSING ", fg=TermColor.Black, bg=TermColor.Yellow),
            Verdict.Error: TermColor.colorText(" ERROR ", fg=TermColor.Black, bg=TermColor.Red, style=TermColor.Bold),
        }.get(self, TermColor.colorText(" UNKNOWN ", TermColor.Yellow))

    def __int__(self):
        return int(self.value)


def workerCount(value: str) -> int:
    """Parses a worker count: a positive integer or ``max``"""
    if value.strip().lower() == "max":
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{value}' is neither a positive integer nor 'max'") from None
    if count < 1:
        raise argparse.ArgumentTypeError(f"worker count {count} is below 1")
    return count


class SearchRunner(object):
    """Searchrunner. Parses the command line and executes one command"""

    def __init__(self, flush=False):
        """Initializes the runner"""
        logger.log(
            TermColor.colorText("SORT", TermColor.Red, style=TermColor.Bold)
            + TermColor.colorText("ing network ", TermColor.White)
            + TermColor.colorText("DEPTH", TermColor.Red, style=TermColor.Bold)
            + TermColor.colorText(" search", TermColor.White)
        )
        logger.log(f"Welcome to sortdepth Version {sortdepth.__version__}")
        if flush:
            logger.flush(quiet=False)
        self.options = dict()
        self.report: Optional[StatsReport] = None

    def addSearchArguments(self, parser: argparse.ArgumentParser, exists: bool):
        group = parser.add_argument_group("Search")
        group.add_argument("--n", "-n", action="store", type=int, required=True, help="Number of channels.")
        if exists:
            group.add_argument("--depth", "-d", action="store", type=int, required=True, help="Depth of the network.")
        else:
            group.add_argument(
                "--max-depth",
                action="store",
                type=int,
                default=None,
                dest="max_depth",
                help="Give up beyond this depth (default: the depth of Batcher's network).",
            )
        group.add_argument(
            "--workers",
            "-j",
            action="store",
            type=workerCount,
            default=None,
            help=f"Number of worker processes or 'max' (default: ${WORKERS_ENV} or 1).",
        )
        group.add_argument(
            "--no-screen",
            action="store_false",
            default=True,
            dest="screen",
            help="Don't drop extensions that fail the sortable-in-k test for the levels left.",
        )
        group.add_argument(
            "--minimize-through",
            action="store",
            type=int,
            default=None,
            dest="minimize_through",
            metavar="DEPTH",
            help="Minimise up to permutation and reflection only through DEPTH.",
        )
        group = parser.add_argument_group("Checkpointing")
        group.add_argument("--checkpoint", action="store", default=None, metavar="DIR", help="Save every depth below DIR.")
        group.add_argument(
            "--resume", action="store_true", default=False, help="Continue from the deepest checkpoint in DIR."
        )
        group = self.addOutputArguments(parser)
        group.add_argument("--stats-out", action="store", default=None, metavar="FILE", help="Write the statistics as JSON.")
        if exists:
            group.add_argument(
                "--witness-out", action="store", default=None, metavar="FILE", help="Write the verified witness network."
            )
        group.add_argument(
            "--progress",
            action="store",
            type=float,
            default=10.0,
            metavar="SECONDS",
            help="Seconds between progress messages, 0 to disable (default: 10).",
        )

    def addOutputArguments(self, parser: argparse.ArgumentParser):
        group = parser.add_argument_group("Output Control")
        group.add_argument(
            "--quiet",
            "-q",
            action="store_const",
            const=True,
            default=False,
            dest="quiet",
            help="Quiet mode. There will be no output except results.",
        )
        group.add_argument(
            "--verbose",
            "-v",
            action="store_const",
            const=False,
            dest="quiet",
            help="Verbose mode. The program gets chatty (default).",
        )
        group.add_argument("--no-color", action="store_false", default=True, dest="color", help="Don't use any colored output.")
        return group

    def parseArgv(self, argv: Optional[List[str]] = None):
        """Parses the argument vector"""
        args = argparse.ArgumentParser(
            prog="sortdepth", description="Decides whether a sorting network of a given depth exists"
        )
        args.add_argument("--version", action="store_const", const=True, default=False, help="Display version information")
        commands = args.add_subparsers(dest="command", metavar="COMMAND")
        commands.required = True
        parser = commands.add_parser("exists", help="Does an n-input sorting network of the given depth exist?")
        self.addSearchArguments(parser, exists=True)
        parser = commands.add_parser("optimal", help="Find the smallest depth of an n-input sorting network.")
        self.addSearchArguments(parser, exists=False)
        parser = commands.add_parser("verify", help="Check whether a network file sorts.")
        parser.add_argument("network", action="store", help="File which contains the network.")
        self.addOutputArguments(parser)

        self.options.update(vars(args.parse_args(argv)))
        if self.options["command"] != "verify":
            if self.options["workers"] is None:
                try:
                    self.options["workers"] = workerCount(os.getenv(WORKERS_ENV, "1"))
                except argparse.ArgumentTypeError as exc:
                    args.error(f"${WORKERS_ENV}: {exc}")
            if self.options["resume"] and self.options["checkpoint"] is None:
                args.error("--resume needs --checkpoint")
        if not self.options["color"]:
            TermColor.active = False
        logger.quiet = self.options["quiet"]

        logMessages = [
            ("command", lambda v: f"Command is: {v}"),
            ("n", lambda v: f"Channels: {v}"),
            ("depth", lambda v: f"Target depth: {v}"),
            ("max_depth", lambda v: f"I will give up beyond depth {v}"),
            ("workers", lambda v: f"I'm using {v} worker{'s' if v > 1 else ''}"),
            ("screen", lambda v: "" if v else "I won't screen extensions by the levels left"),
            ("minimize_through", lambda v: f"I will only minimise through depth {v}"),
            ("checkpoint", lambda v: f"Checkpoints go to '{v}'"),
            ("resume", lambda v: "I will resume from the deepest checkpoint" if v else ""),
            ("stats_out", lambda v: f"Statistics go to '{v}'"),
            ("witness_out", lambda v: f"The witness goes to '{v}'"),
            ("network", lambda v: f"I'm verifying '{v}'"),
        ]
        for option, msgFunc in logMessages:
            if self.options.get(option) is not None:
                msg = msgFunc(self.options[option])
                if len(msg) > 0:
                    logger.log(f"\t{msg}")
        logger.flush(self.options["quiet"])
        logger.autoflush = True

    def searchConfig(self, n: int, d: int) -> SearchConfig:
        return SearchConfig(
            n=n,
            d=d,
            worker_count=self.options["workers"],
            minimize_through_depth=self.options["minimize_through"],
            checkpoint_directory=self.options["checkpoint"],
            resume=self.options["resume"],
            screen=self.options["screen"],
            progress_interval=self.options["progress"],
        )

    def progress(self, msg: str):
        logger.log(msg)

    def logFunnel(self, outcome: SearchOutcome):
        stats = outcome.stats
        logger.log(f"n={stats.n}, d={stats.d}:")
        for row in stats.depths:
            logger.log(
                f"\tdepth {row.depth}: pool {formatCount(row.pool_size)}, generated {formatCount(row.generated_count)}, "
                f"look-ahead {formatCount(row.lookahead_survivors)}, levels {formatCount(row.level_survivors)}, "
                f"screened {formatCount(row.sortable_k_survivors)}, unique {formatCount(row.unique_count)}, "
                f"minimal {formatCount(row.minimized_count)}",
                showTime=False,
            )
        summary = summaryRow(stats)
        logger.log(f"\tcpu {summary['runtime_seconds']:.2f}s, wall {summary['wall_seconds']:.2f}s", showTime=False)

    def newReport(self) -> StatsReport:
        echo = {key: value for key, value in self.options.items() if key not in ("color", "version")}
        self.report = StatsReport(self.options["command"], echo)
        return self.report

    def writeReport(self):
        if self.options.get("stats_out") and self.report is not None:
            self.report.write(self.options["stats_out"])
            logger.log(f"Statistics written to '{self.options['stats_out']}'")

    def cmd_exists(self) -> Verdict:
        report = self.newReport()
        outcome = exists_sorting_network(self.searchConfig(self.options["n"], self.options["depth"]), self.progress)
        report.add(outcome)
        report.result = {"exists": outcome.exists}
        self.logFunnel(outcome)
        if outcome.exists:
            print("exists")
            print(format_network(outcome.witness), end="")
            if self.options["witness_out"]:
                if not is_sorting_network(outcome.witness):
                    raise RuntimeError("refusing to write a witness that does not sort")
                write_network(outcome.witness, self.options["witness_out"])
                logger.log(f"Witness written to '{self.options['witness_out']}'")
        else:
            print("none")
        self.writeReport()
        return Verdict.Exists if outcome.exists else Verdict.Missing

    def cmd_optimal(self) -> Verdict:
        n = self.options["n"]
        maxDepth = self.options["max_depth"] if self.options["max_depth"] is not None else depth_upper_bound(n)
        report = self.newReport()
        found = None
        for outcome in depth_searches(n, maxDepth, self.searchConfig(n, maxDepth), self.progress):
            report.add(outcome)
            self.logFunnel(outcome)
            if outcome.exists:
                found = outcome
        report.result = {"optimal_depth": found.stats.d if found is not None else None, "max_depth": maxDepth}
        if found is not None:
            print(found.stats.d)
        else:
            print("none")
            logger.log(f"No {n}-input sorting network of depth {maxDepth} or less")
        self.writeReport()
        return Verdict.Exists if found is not None else Verdict.Missing

    def cmd_verify(self) -> Verdict:
        network = read_network(self.options["network"])
        sorts = is_sorting_network(network)
        print(f"n={network.n}")
        print(f"depth={network.depth}")
        print(f"comparators={network.size}")
        print(f"outputs={output_set(network).cardinality}")
        print(f"sorting={'yes' if sorts else 'no'}")
        return Verdict.Exists if sorts else Verdict.Missing

    def run(self) -> Verdict:
        """Runs the parsed command"""
        command = {"exists": self.cmd_exists, "optimal": self.cmd_optimal, "verify": self.cmd_verify}[self.options["command"]]
        try:
            verdict = command()
        except (
            NetworkError,
            OutputSetFormatError,
            CheckpointError,
            OracleRefusal,
            SearchExhausted,
            OSError,
            ValueError,
            RuntimeError,
        ) as exc:
            verdict = self.fail(exc)
        logger.log(f"Verdict: {verdict}")
        logger.flush(self.options["quiet"])
        return verdict

    def fail(self, exc: Exception) -> Verdict:
        # diagnostics are shown even in quiet mode
        logger.logListener(TermColor.colorText(f"sortdepth: {type(exc).__name__}: {exc}", TermColor.Red))
        return Verdict.Error
