#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import sys

from typing import List, Optional

from .runner import SearchRunner, Verdict
from .utils import TermColor, logger

import sortdepth


"""
Provides the entry point for the software.

Parses the command line, runs the requested command and exits with the code
of its :py:class:`~sortdepth.runner.Verdict`.
"""


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    logger.clear()
    logger.autoflush = False
    logger.quiet = False
    TermColor.active = "--no-color" not in argv
    TermColor.enable()
    if "--version" in argv:
        SearchRunner(flush=True)
        print(sortdepth.__version__)
        return int(Verdict.Exists)
    runner = SearchRunner()
    runner.parseArgv(argv)
    return int(runner.run())


if __name__ == "__main__":
    sys.exit(main())
