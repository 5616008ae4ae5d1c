#!/usr/bin/env python3

import os
import setuptools

import sortdepth


def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setuptools.setup(
    name="sortdepth",
    version=sortdepth.__version__,
    description="Decides whether an n-input sorting network of depth d exists",
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
    python_requires=">=3.8",
    install_requires=["numpy", "pyparsing>=3.0", "colorama>=0.4.6"],
    entry_points={
        "console_scripts": [
            "sortdepth = sortdepth.__main__:main",
        ]
    },
    extras_require={
        "test": ["pytest"],
        "docs": ["sphinx"],
    },
)
