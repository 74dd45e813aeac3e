# -*- coding: utf-8 -*-
#
# cmcert documentation build configuration file.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from cmcert import __version__  # noqa: E402

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'numpydoc',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'cmcert'
copyright = u'cmcert developers'
author = u'cmcert developers'

version = __version__
release = version

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = True

numpydoc_show_class_members = False

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'cmcertdoc'

latex_documents = [
    (master_doc, 'cmcert.tex', u'cmcert Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'cmcert', u'cmcert Documentation', [author], 1)
]
