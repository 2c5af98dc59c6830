# Licensed under a 3-clause BSD style license - see LICENSE.rst
import math
import os

import numpy as np

__all__ = ['Result', 'format_violation', 'parse_bound', 'parse_window',
           'get_max_threads']


def format_violation(value, tol=None):
    """Short text for a violation, optionally followed by the tolerance it
    was compared against."""
    if value is None:
        return 'n/a'
    if not np.isfinite(value):
        return repr(float(value))
    text = '{0:.6g}'.format(value)
    if tol is not None:
        text += ' (tolerance {0:.3g})'.format(tol)
    return text


class Result(dict):
    """Represents a certification, construction or search result.

    A dict with attribute accessors, so results print readably, can be
    inspected with ``keys()`` and serialize to JSON as they are.

        >>> res = Result(verdict='FALSIFIED', max_violation=0.5)
        >>> res.verdict
        'FALSIFIED'
    """

    def __getattr__(self, name):
        try:
            return self[name]
        except KeyError:
            raise AttributeError(name)

    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__

    def __repr__(self):
        if self.keys():
            m = max(map(len, list(self.keys()))) + 1
            return '\n'.join([k.rjust(m) + ': ' + repr(v)
                              for k, v in self.items()])
        else:
            return self.__class__.__name__ + "()"


def parse_bound(s):
    """Parse a real number or one of 'inf', '+inf', '-inf'."""
    s = s.strip().lower()
    if s in ('inf', '+inf', 'infinity'):
        return math.inf
    if s in ('-inf', '-infinity'):
        return -math.inf
    value = float(s)
    if math.isnan(value):
        raise ValueError("bound must not be nan")
    return value


def parse_window(s):
    """Parse a window given as 'LO:HI' into a (lo, hi) tuple of floats."""
    parts = s.split(':')
    if len(parts) != 2:
        raise ValueError("window must be given as LO:HI, got {0!r}"
                         .format(s))
    lo, hi = parse_bound(parts[0]), parse_bound(parts[1])
    if not lo < hi:
        raise ValueError("window lower bound must be below upper bound, "
                         "got {0!r}".format(s))
    return lo, hi


def get_max_threads():
    """Number of worker threads for the counterexample search.

    The ``KB_THREADS`` environment variable takes precedence over the
    ``max_threads`` configuration item; 0 means one thread per CPU.
    """
    from . import conf

    env = os.environ.get('KB_THREADS')
    if env is not None and env.strip() != '':
        try:
            n = int(env)
        except ValueError:
            raise ValueError("KB_THREADS must be an integer, got {0!r}"
                             .format(env))
    else:
        n = conf.max_threads
    if n <= 0:
        n = os.cpu_count() or 1
    return n
