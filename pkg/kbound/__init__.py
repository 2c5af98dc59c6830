# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
kbound: grid certification of bounds on sums of comparison functions
"""

from astropy.config import ConfigItem, ConfigNamespace

__version__ = '0.1.dev'


# Create default configurations. The file kbound.cfg should be
# kept in sync with the ConfigItems here.
class Conf(ConfigNamespace):
    """Configuration parameters for kbound."""
    tol_abs = ConfigItem(
        1.e-9,
        "Absolute tolerance added to every inequality comparison.",
        cfgtype='float')
    tol_rel = ConfigItem(
        1.e-9,
        "Relative tolerance, multiplied by max(1, |bounding side|).",
        cfgtype='float')
    tol_cont = ConfigItem(
        1.e-9,
        "Largest jump allowed between adjacent pieces of a piecewise "
        "function.",
        cfgtype='float')
    eps_strict = ConfigItem(
        1.e-12,
        "Adjacent grid increments below this value make a strict "
        "monotonicity check inconclusive.",
        cfgtype='float')
    grid = ConfigItem(
        256,
        "Default number of grid points per axis.",
        cfgtype='integer')
    levels = ConfigItem(
        3,
        "Default number of zoom refinement levels of the counterexample "
        "search.",
        cfgtype='integer')
    all_pairs_limit = ConfigItem(
        512,
        "Largest grid size for which pair checks use all pairs; larger "
        "grids use adjacent pairs plus seeded random pairs.",
        cfgtype='integer')
    max_threads = ConfigItem(
        0,
        "Worker threads for the counterexample search; 0 means one per "
        "CPU. The KB_THREADS environment variable overrides this.",
        cfgtype='integer')
    window = ConfigItem(
        '-5:5',
        "Default verification window LO:HI of the check command.",
        cfgtype='string')


# Create an instance of the class we just defined.
conf = Conf()

# clean up namespace
del ConfigItem, ConfigNamespace

from .expr import *
from .funcmodel import *
from .io import *
from .certify import *
from .construct import *
from .verify import *
from . import registry

from . import builtins
