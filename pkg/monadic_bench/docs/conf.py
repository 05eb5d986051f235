# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))

project = 'monadic_bench'
copyright = "2026, monadic_bench developers"
author = "monadic_bench developers"

# autodoc reads the numpy style docstrings through napoleon; the
# extrapolation module needs mathjax
extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode',
              'sphinx.ext.napoleon', 'sphinx.ext.mathjax']

autodoc_default_options = {
    'members': None,
    'undoc-members': None,
    'show-inheritance': None,
}
autodoc_member_order = 'bysource'

master_doc = 'index'
exclude_patterns = ['_build']

html_theme = 'sphinx_rtd_theme'
