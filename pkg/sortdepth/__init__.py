#!/usr/bin/env python3
# -*- coding:utf-8 -*-

"""
sortdepth - decides whether an n-input sorting network of depth d exists
"""

__version__ = "1.0.0"
