# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Importing this module registers loaders for the built-in comparison
functions of ``data/catalog.txt``.
"""

from astropy.utils.data import get_pkg_data_filename

from . import registry
from .io import read_functions
from .funcmodel import FunctionSpec

# This module is only imported for its side effects.
__all__ = []

# name, description
CATALOG = [
    ('identity', 'x'),
    ('double', '2*x'),
    ('quadruple', '4*x'),
    ('square', 'x^2 on [0, inf)'),
    ('quartic', 'x^4 on [0, inf)'),
    ('cube', 'x^3'),
    ('expm1', 'exp(x) - 1'),
    ('sqrt', 'sqrt(x) on [0, inf)'),
    ('tanh', 'tanh(x) on [0, inf)'),
    ('sinh', 'sinh(x)'),
    ('reflected_sqrt', '-sqrt(-x) for x < 0, x for x >= 0'),
]

_catalog_cache = {}


def load_catalog_function(relpath, name=None):
    """Read the catalog file (once) and return the function ``name``."""
    if relpath not in _catalog_cache:
        abspath = get_pkg_data_filename(relpath)
        _catalog_cache[relpath] = read_functions(abspath)
    return _catalog_cache[relpath][name]


for name, description in CATALOG:
    registry.register_loader(FunctionSpec, name, load_catalog_function,
                             args=['data/catalog.txt'],
                             meta={'description': description})
