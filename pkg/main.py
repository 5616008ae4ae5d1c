#!/usr/bin/env python3
# -*- coding:utf-8 -*-

# this file exists only for pyinstaller to build an exe

import sys

import sortdepth.__main__

if __name__ == "__main__":
    sys.exit(sortdepth.__main__.main())
