# Sphinx configuration of the blocksof documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

import blocksof

# -- Project information -----------------------------------------------------

project = 'blocksof'
copyright = '2026, blocksof developers'
author = 'blocksof developers'
version = blocksof.__version__
release = blocksof.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'myst_parser',
    'numpydoc',
]

myst_enable_extensions = ["colon_fence", "dollarmath"]

autodoc_member_order = 'bysource'
autodoc_default_options = {
    'members': True,
    'undoc-members': False,
}
numpydoc_show_class_members = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

pygments_style = "sphinx"
pygments_dark_style = "monokai"

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

master_doc = 'index'

# -- Options for HTML output -------------------------------------------------

html_theme = 'furo'
html_title = f'blocksof {release}'
