# Sphinx configuration of the porosim documentation.
#
# Project metadata comes from the Poetry manifest, the landing page from the
# repository README and the gallery from the scripts in docs/examples.

import os
import pathlib
import shutil
import sys
from datetime import datetime

import toml
from sphinx_gallery.sorting import FileNameSortKey

HERE = pathlib.Path(__file__).parent
ROOT = HERE.parents[1]

sys.path.insert(0, ROOT.resolve().as_posix())

# Gallery scripts draw off screen.
os.environ.setdefault("MPLBACKEND", "Agg")

# -- Project information -----------------------------------------------------
manifest = toml.load(ROOT / "pyproject.toml")["tool"]["poetry"]

project = manifest["name"]
author = ", ".join(manifest["authors"])
release = manifest["version"]
version = ".".join(release.split(".")[:2])
copyright = f"2024 - {datetime.now().year}, {author}"

shutil.copyfile(ROOT / "README.md", HERE / "README.md")

# -- General configuration ---------------------------------------------------
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx_gallery.gen_gallery",
    "rinoh.frontend.sphinx",
    "enum_tools.autoenum",
    "myst_parser",
]

source_suffix = {".rst": "restructuredtext", ".md": "markdown"}
exclude_patterns = ["auto_examples/*.ipynb", "auto_examples/*.py.md5"]

autoclass_content = "both"
autodoc_typehints = "description"
autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "show-inheritance": True}

autosummary_generate = True

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = False

# -- HTML output -------------------------------------------------------------
html_theme = "furo"
html_title = f"{project} {release}"

# -- intersphinx -------------------------------------------------------------
intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/reference/", None),
    "matplotlib": ("https://matplotlib.org/stable/", None),
}

# -- sphinx_gallery ----------------------------------------------------------
sphinx_gallery_conf = {
    "examples_dirs": "../examples",
    "gallery_dirs": "auto_examples",
    "filename_pattern": r"/\d+_",
    "within_subsection_order": FileNameSortKey,
    "image_scrapers": ("matplotlib",),
    "doc_module": ("porosim",),
    "reference_url": {"porosim": None},
    "remove_config_comments": True,
    "show_memory": True,
    "plot_gallery": "True",
}
