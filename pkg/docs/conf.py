# -*- coding: utf-8 -*-
# Licensed under a 3-clause BSD style license - see LICENSE.rst
#
# kbound documentation build configuration file.

import kbound

# -- General configuration ----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.autosummary',
              'sphinx.ext.napoleon', 'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax']

autosummary_generate = True
napoleon_google_docstring = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'astropy': ('https://docs.astropy.org/en/stable/', None)}

master_doc = 'index'
exclude_patterns = ['_build']

# -- Project information ------------------------------------------------------

project = u'kbound'
author = u'The kbound Developers'
copyright = u'2026, ' + author

# The short X.Y version.
version = kbound.__version__.split('-', 1)[0]
# The full version, including alpha/beta/rc tags.
release = kbound.__version__

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'
html_title = '{0} v{1}'.format(project, release)
htmlhelp_basename = project + 'doc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [('index', project + '.tex', project + u' Documentation',
                    author, 'manual')]

# -- Options for manual page output --------------------------------------------

man_pages = [('index', project.lower(), project + u' Documentation',
              [author], 1)]
