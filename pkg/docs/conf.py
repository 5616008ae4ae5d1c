# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# Only the settings that differ from the sphinx defaults are listed, see
# http://www.sphinx-doc.org/en/master/config for the full list.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import sortdepth  # noqa: E402


# -- Project information -----------------------------------------------------

project = "sortdepth"
copyright = "2026, the sortdepth developers"
author = "the sortdepth developers"

release = sortdepth.__version__
version = ".".join(release.split(".")[:2])


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
]

master_doc = "index"
exclude_patterns = ["_build", "build", "dist", "examples", "tests"]
pygments_style = "sphinx"

# keep the module order, the search reads top to bottom
autodoc_member_order = "bysource"
add_module_names = False


# -- Output ------------------------------------------------------------------

html_theme = "alabaster"
htmlhelp_basename = "sortdepthdoc"

latex_documents = [
    (master_doc, "sortdepth.tex", "sortdepth Documentation", author, "manual"),
]

man_pages = [
    (master_doc, "sortdepth", "sortdepth Documentation", [author], 1),
]
