#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
Helpers shared by the command line and the search:
    - ANSI colours through colorama
    - The run log, buffered and written to standard error
    - Count formatting
"""

from typing import Callable, List

import os
import sys
import time

import colorama


class TermColor:
    """Colour codes and the helper that wraps text in them"""

    Black = colorama.Fore.BLACK
    """Black color code"""
    Red = colorama.Fore.RED
    """Red color code"""
    Green = colorama.Fore.GREEN
    """Green color code"""
    Yellow = colorama.Fore.YELLOW
    """Yellow color code"""
    Blue = colorama.Fore.BLUE
    """Blue color code"""
    Purple = colorama.Fore.MAGENTA
    """Purple color code"""
    Cyan = colorama.Fore.CYAN
    """Cyan color code"""
    White = colorama.Fore.WHITE
    """White color code"""
    Normal = colorama.Style.NORMAL
    """Normal text style"""
    Bold = colorama.Style.BRIGHT
    """Bold text style"""
    Dim = colorama.Style.DIM
    """Dim text style"""

    active = True
    """False turns every colorText call into a no-op"""

    @staticmethod
    def enable():
        """Prepares the console (a no-op outside of Windows)"""
        colorama.just_fix_windows_console()

    @staticmethod
    def colorText(text: str, fg: str = White, bg: str = None, style: str = Normal) -> str:
        if TermColor.active and (os.getenv("ANSI_COLORS_DISABLED") is None):
            back = _BACKGROUNDS.get(bg, "") if bg is not None else ""
            return f"{style}{back}{fg}{text}{colorama.Style.RESET_ALL}"
        else:
            return text


_BACKGROUNDS = {
    getattr(colorama.Fore, name): getattr(colorama.Back, name)
    for name in ("BLACK", "RED", "GREEN", "YELLOW", "BLUE", "MAGENTA", "CYAN", "WHITE")
}
"""Background code for every foreground color"""


def logPrinter(msg: str):
    print(msg, file=sys.stderr)


class logger:
    """The run log. Messages are buffered until flushed or streamed with autoflush"""

    _buffer: List[str] = []
    """Message buffer"""
    autoflush = False
    """Auto flush logged messages"""
    quiet = False
    """Drop every message instead of emitting it"""
    logListener: Callable[[str], None] = staticmethod(logPrinter)
    """Listener to redirect output"""

    @staticmethod
    def log(msg: str, showTime=True):
        """Logs a message, prefixed with the wall clock time unless ``showTime`` is off"""
        if showTime:
            msg = (
                TermColor.colorText(f"[{time.strftime('%H:%M:%S')}]", TermColor.Blue, style=TermColor.Dim)
                + " "
                + msg.strip("\r\n")
            )
        else:
            msg = "           " + msg.strip("\r\n")
        if logger.autoflush:
            if not logger.quiet:
                logger.logListener(msg)
        else:
            logger._buffer.append(msg)

    @staticmethod
    def flush(quiet=False):
        """Emits the buffered messages unless quiet, then empties the buffer"""
        if not (quiet or logger.quiet):
            for b in logger._buffer:
                logger.logListener(b)
            sys.stderr.flush()
        logger.clear()

    @staticmethod
    def clear():
        """Drops the buffered messages"""
        logger._buffer = []


def formatCount(n: int) -> str:
    """Format large counts with thousands separators"""
    return f"{n:,}"
