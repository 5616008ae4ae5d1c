#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Reading and writing comparator networks as text.

The format is line based::

    n=4
    1:2 3:4
    1:3 2:4
    2:3

The first line gives the channel count, every following line is one level
as a space separated list of ``lo:hi`` pairs. A blank line is an empty
level, ``#`` starts a comment and a line holding nothing but a comment is
skipped.
"""

from typing import List

import pyparsing as pp

from .network import Comparator, Level, Network, NetworkError, MAX_CHANNELS


class NetworkFormatError(NetworkError):
    """A syntax or validity error in a network file"""

    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: '{line}'")
        self.lineno = lineno
        """The 1-based line number"""
        self.line = line
        """The offending line"""
        self.reason = reason


def syntax():
    """Returns the grammar for the header line and for a level line"""
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    header = pp.Suppress(pp.CaselessLiteral("n")) + pp.Suppress("=") + integer("n") + pp.StringEnd()
    pair = pp.Group(integer + pp.Suppress(":") + integer)
    level = pp.ZeroOrMore(pair) + pp.StringEnd()
    return header, level


_HEADER, _LEVEL = syntax()


def _stripComment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _isCommentOnly(line: str) -> bool:
    return line.strip().startswith("#")


def buildLevel(pairs, n: int, lineno: int, line: str) -> Level:
    seen = set()
    comparators: List[Comparator] = []
    for lo, hi in pairs:
        if not lo < hi:
            raise NetworkFormatError(lineno, line, f"comparator {lo}:{hi} needs lo < hi")
        for channel in (lo, hi):
            if not 1 <= channel <= n:
                raise NetworkFormatError(lineno, line, f"channel {channel} is outside 1..{n}")
            if channel in seen:
                raise NetworkFormatError(lineno, line, f"channel {channel} is used twice")
            seen.add(channel)
        comparators.append(Comparator(lo, hi))
    return Level(tuple(comparators))


def parse_network(text: str) -> Network:
    """
    Parses the text format into a :py:class:`Network`.

    Raises :py:class:`NetworkFormatError` naming the line of the first problem.
    """
    lines = text.splitlines()
    n = None
    levels: List[Level] = []
    for lineno, line in enumerate(lines, start=1):
        if n is None:
            if line.strip() == "" or _isCommentOnly(line):
                continue
            try:
                n = _HEADER.parse_string(_stripComment(line), parse_all=True)["n"]
            except pp.ParseException:
                raise NetworkFormatError(lineno, line, "expected the header 'n=<channels>'") from None
            if not 2 <= n <= MAX_CHANNELS:
                raise NetworkFormatError(lineno, line, f"channel count must be within 2..{MAX_CHANNELS}")
            continue
        if _isCommentOnly(line):
            continue
        try:
            parsed = _LEVEL.parse_string(_stripComment(line), parse_all=True)
        except pp.ParseException as exc:
            raise NetworkFormatError(lineno, line, f"malformed level at column {exc.col}") from None
        levels.append(buildLevel([tuple(p) for p in parsed], n, lineno, line))
    if n is None:
        raise NetworkFormatError(max(len(lines), 1), "", "missing header 'n=<channels>'")
    return Network(n, tuple(levels))


def format_network(network: Network) -> str:
    """The canonical text of a network; :py:func:`parse_network` inverts it"""
    lines = [f"n={network.n}"]
    lines.extend(str(level) for level in network.levels)
    return "\n".join(lines) + "\n"


def read_network(path) -> Network:
    with open(path) as fileHnd:
        return parse_network(fileHnd.read())


def write_network(network: Network, path):
    with open(path, "w") as fileHnd:
        fileHnd.write(format_network(network))
