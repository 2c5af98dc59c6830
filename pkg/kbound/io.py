# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Function definition files and report output."""

from collections import OrderedDict
import json
import math
import re

import numpy as np
from astropy.table import Table

from .expr import ParseError, DomainError, parse_expr
from .funcmodel import CLAIMS, PiecewiseFn, FunctionSpec, sample

__all__ = ['FunctionFileError', 'read_functions', 'to_builtin', 'write_json',
           'write_function_csv', 'write_search_csv']

_NAME = r'[A-Za-z_][A-Za-z_0-9]*'
_BOUND = r'[^,\[\]()]+?'
_FUNCTION_RE = re.compile(r'^function\s+(' + _NAME + r')\s*:\s*(.*)$')
_ON_RE = re.compile(r'^on\s*[\[(]\s*(' + _BOUND + r')\s*,\s*(' + _BOUND +
                    r')\s*([\])])\s*:\s*(.+)$')
_DOMAIN_RE = re.compile(r'^domain\s*:\s*[\[(]\s*(' + _BOUND + r')\s*,\s*(' +
                        _BOUND + r')\s*[\])]\s*$')
_CLAIMS_RE = re.compile(r'^claims\s*:\s*(.*)$')


class FunctionFileError(ValueError):
    """Raised for malformed function definition files."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super(FunctionFileError, self).__init__(
            "line {0}: {1}".format(lineno, message))


def _stripcomment(line, char='#'):
    pos = line.find(char)
    if pos == -1:
        return line
    else:
        return line[:pos]


def _cast_bound(s, lineno):
    s = s.strip().lower()
    if s in ('inf', '+inf'):
        return math.inf
    if s == '-inf':
        return -math.inf
    try:
        value = float(s)
    except ValueError:
        raise FunctionFileError(lineno, "invalid interval bound {0!r}"
                                .format(s))
    if math.isnan(value):
        raise FunctionFileError(lineno, "interval bound must not be nan")
    return value


def _parse(text, lineno):
    try:
        return parse_expr(text)
    except ParseError as e:
        raise FunctionFileError(lineno, "{0}: {1}".format(text.strip(), e))


def _build(d, tol_cont):
    """Turn one collected definition into a FunctionSpec."""
    lineno = d['lineno']
    if d['piecewise']:
        if not d['pieces']:
            raise FunctionFileError(lineno, "piecewise function {0!r} has "
                                    "no 'on' lines".format(d['name']))
        end = max(hi for _, hi, _, _, _ in d['pieces'])
        for _, hi, _, on_lineno, closing in d['pieces']:
            if closing == ']' and hi != end:
                raise FunctionFileError(
                    on_lineno, "only the last piece may end with ']'; "
                    "pieces are half-open [lo, hi)")
        pieces = [(lo, hi, body) for lo, hi, body, _, _ in d['pieces']]
    else:
        lo, hi = d['domain']
        pieces = [(lo, hi, d['expr'])]
    try:
        fn = PiecewiseFn(pieces, name=d['name'])
    except ValueError as e:
        raise FunctionFileError(lineno, "{0}: {1}".format(d['name'], e))

    for b, jump in _jumps(fn, lineno):
        if jump > tol_cont:
            raise FunctionFileError(
                lineno, "{0} is discontinuous at {1!r} (jump {2!r})"
                .format(d['name'], b, jump))
    return FunctionSpec(d['name'], fn, d['claims'])


def _jumps(fn, lineno):
    try:
        return fn.breakpoint_jumps()
    except DomainError as e:
        raise FunctionFileError(lineno, "{0}: cannot evaluate at a "
                                "breakpoint: {1}".format(fn.name, e))


def read_functions(name_or_obj, tol_cont=None):
    """Read named functions from a function definition file.

    The format is line based; ``#`` starts a comment::

        function square: x^2
            domain: [0, inf)
            claims: ClassK, Convex

        function reflected_sqrt: piecewise
            on [-inf, 0): -sqrt(-x)
            on [0, inf): x
            claims: ClassKe

    A single expression has domain (-inf, inf) unless a ``domain`` line is
    given. Pieces of a piecewise function must tile their domain and agree
    at shared breakpoints to within ``tol_cont``.

    Parameters
    ----------
    name_or_obj : str or file-like object
    tol_cont : float, optional
        Continuity tolerance. Default is ``kbound.conf.tol_cont``.

    Returns
    -------
    functions : `~collections.OrderedDict`
        Mapping of name to `~kbound.FunctionSpec`, in file order.

    Raises
    ------
    FunctionFileError
    """
    from . import conf

    if tol_cont is None:
        tol_cont = conf.tol_cont

    if isinstance(name_or_obj, str):
        with open(name_or_obj, 'r') as f:
            lines = f.readlines()
    else:
        lines = name_or_obj.readlines()

    functions = OrderedDict()
    current = None

    def finish(d):
        if d is None:
            return
        if d['name'] in functions:
            raise FunctionFileError(d['lineno'], "function {0!r} defined "
                                    "twice".format(d['name']))
        functions[d['name']] = _build(d, tol_cont)

    for lineno, line in enumerate(lines, start=1):
        line = _stripcomment(line).strip()
        if len(line) == 0:
            continue

        m = _FUNCTION_RE.match(line)
        if m is not None:
            finish(current)
            name, rest = m.group(1), m.group(2).strip()
            current = {'name': name, 'lineno': lineno, 'claims': (),
                       'domain': (-math.inf, math.inf), 'pieces': [],
                       'piecewise': rest == 'piecewise', 'expr': None}
            if not current['piecewise']:
                if rest == '':
                    raise FunctionFileError(lineno, "function {0!r} has no "
                                            "expression".format(name))
                current['expr'] = _parse(rest, lineno)
            continue

        if current is None:
            raise FunctionFileError(lineno, "expected 'function NAME: ...'")

        m = _ON_RE.match(line)
        if m is not None:
            if not current['piecewise']:
                raise FunctionFileError(lineno, "'on' line in a function "
                                        "that is not piecewise")
            lo = _cast_bound(m.group(1), lineno)
            hi = _cast_bound(m.group(2), lineno)
            current['pieces'].append((lo, hi, _parse(m.group(4), lineno),
                                      lineno, m.group(3)))
            continue

        m = _DOMAIN_RE.match(line)
        if m is not None:
            if current['piecewise']:
                raise FunctionFileError(lineno, "the domain of a piecewise "
                                        "function is given by its pieces")
            current['domain'] = (_cast_bound(m.group(1), lineno),
                                 _cast_bound(m.group(2), lineno))
            continue

        m = _CLAIMS_RE.match(line)
        if m is not None:
            claims = [c.strip() for c in m.group(1).split(',') if c.strip()]
            for c in claims:
                if c not in CLAIMS:
                    raise FunctionFileError(
                        lineno, "unknown claim {0!r}; valid claims are {1}"
                        .format(c, ', '.join(CLAIMS)))
            current['claims'] = tuple(claims)
            continue

        raise FunctionFileError(lineno, "cannot parse {0!r}".format(line))

    finish(current)
    return functions


def to_builtin(obj):
    """Convert results to plain Python objects suitable for `json`.

    Infinite floats become the strings 'inf'/'-inf' so the output is
    strict JSON; objects with a ``describe()`` method are replaced by their
    description.
    """
    if isinstance(obj, dict):
        return OrderedDict((str(k), to_builtin(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_builtin(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_builtin(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isnan(obj):
            return 'nan'
        if math.isinf(obj):
            return 'inf' if obj > 0 else '-inf'
        return obj
    if hasattr(obj, 'describe'):
        return to_builtin(obj.describe())
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def write_json(obj, name_or_obj):
    """Write a result as an indented JSON document.

    The output depends only on the content of ``obj``, so repeated runs
    with the same inputs produce byte-identical files.
    """
    text = json.dumps(to_builtin(obj), indent=2, allow_nan=False) + '\n'
    if isinstance(name_or_obj, str):
        with open(name_or_obj, 'w') as f:
            f.write(text)
    else:
        name_or_obj.write(text)


def write_function_csv(fn, window, n, fname):
    """Write ``n`` samples of ``fn`` over ``window`` to a CSV file with
    columns x,value."""
    samples = sample(fn, window, n)
    t = Table(rows=samples, names=('x', 'value'))
    t.write(fname, format='ascii.csv', overwrite=True)


def write_search_csv(samples, fname):
    """Write counterexample search samples to a CSV file with columns
    x1,x2,gap.

    Parameters
    ----------
    samples : dict
        Arrays 'x1', 'x2' and 'gap' of equal shape, as returned by
        `~kbound.search_samples`.
    fname : str
    """
    t = Table([np.ravel(samples['x1']), np.ravel(samples['x2']),
               np.ravel(samples['gap'])], names=('x1', 'x2', 'gap'))
    t.write(fname, format='ascii.csv', overwrite=True)
