#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
import os
import sys
import typing

import ntlab.types
from ntlab import __version__ as version

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.todo",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.mathjax",
    "sphinx_autodoc_typehints",
    "sphinxcontrib.autodoc_pydantic",
]

# Add any paths that contain templates here, relative to this directory.
templates_path = ["_templates"]

# See https://www.sphinx-doc.org/en/master/usage/extensions/autodoc.html
autodoc_class_signature = "separated"
autodoc_default_options = {
    "exclude-members": "__new__",
}
autodoc_member_order = "bysource"
autoclass_content = "class"

# See https://autodoc-pydantic.readthedocs.io/en/v1.9.0/users/configuration.html
autodoc_pydantic_field_show_alias = False
autodoc_pydantic_field_show_default = False
autodoc_pydantic_field_show_required = False
autodoc_pydantic_model_member_order = "bysource"
autodoc_pydantic_model_show_config_summary = False
autodoc_pydantic_model_show_field_summary = False
autodoc_pydantic_model_show_json = False

# See https://github.com/tox-dev/sphinx-autodoc-typehints#options
typehints_defaults = "comma"
typehints_use_signature = True
typehints_use_signature_return = True


def typehints_formatter(annotation, config):
    """
    Provide links from function signatures to TypedDict and Literal docstrings.
    """
    for name, value in vars(ntlab.types).items():
        if annotation != value or name.startswith("_"):
            continue
        if isinstance(value, type) and issubclass(value, dict):  # TypedDict
            return f":data:`~ntlab.types.{name}`"
        if typing.get_origin(value) is typing.Literal:
            return f":data:`~ntlab.types.{name}`"
    return None


################################
# CUSTOM
################################

source_dir = os.path.dirname(__file__)
doc_dir = os.path.dirname(source_dir)
root_dir = os.path.dirname(doc_dir)
sys.path.append(root_dir)

napoleon_google_docstring = True
napoleon_include_init_with_doc = True
napoleon_attr_annotations = True

__version__ = version.split("-", 0)
__release__ = version

source_suffix = ".rst"
master_doc = "index"

# General information about the project.
project = "ntlab"

language = "en"
exclude_patterns = []
pygments_style = "sphinx"

# If true, `todo` and `todoList` produce output, else they produce nothing.
todo_include_todos = True

html_theme = "alabaster"
html_sidebars = {}
