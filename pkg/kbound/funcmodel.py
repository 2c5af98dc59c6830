# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Piecewise functions of one real variable.

Every function the package works with (the user's comparison functions as
well as every constructed function) is a `PiecewiseFn`: an ordered tuple of
pieces ``[lo, hi)`` that tile the domain, the last piece being closed. A
piece body is either an expression tree or a reference to another
`PiecewiseFn` (`CompositeRef`, `SumRef`), so constructed functions reuse
existing ones instead of re-deriving them.
"""

import math
from collections import namedtuple

import numpy as np

from . import registry
from .expr import ExprNode, DomainError, eval_expr

__all__ = ['Piece', 'PiecewiseFn', 'CompositeRef', 'SumRef', 'FunctionSpec',
           'CLAIMS', 'evaluate', 'compose_shift', 'sample', 'get_function']

CLAIMS = ('ClassK', 'ClassKe', 'Convex', 'Concave')

Piece = namedtuple('Piece', ['lo', 'hi', 'body'])


def get_function(name):
    """Get a FunctionSpec from the registry by name."""
    return registry.retrieve(FunctionSpec, name)


def _format_bound(value):
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return float(value)


class CompositeRef(object):
    """Body evaluating ``base(x + arg_shift) + value_offset``.

    The base function is evaluated as it is, with no algebraic rewriting, so
    identities built from shifted copies of one function hold to the bit.

    Parameters
    ----------
    base : `~kbound.PiecewiseFn`
    arg_shift : float
    value_offset : float
    """

    def __init__(self, base, arg_shift, value_offset):
        self._base = base
        self._arg_shift = float(arg_shift)
        self._value_offset = float(value_offset)

    @property
    def base(self):
        return self._base

    @property
    def arg_shift(self):
        return self._arg_shift

    @property
    def value_offset(self):
        return self._value_offset

    def evaluate(self, x):
        return self._base.evaluate(x + self._arg_shift) + self._value_offset

    def describe(self):
        return {'composite': {'base': self._base.describe(),
                              'arg_shift': self._arg_shift,
                              'value_offset': self._value_offset}}

    def __repr__(self):
        return '<CompositeRef {0}(x + {1!r}) + {2!r}>'.format(
            self._base.name or 'f', self._arg_shift, self._value_offset)


class SumRef(object):
    """Body evaluating the sum of several functions, in order."""

    def __init__(self, terms):
        self._terms = tuple(terms)
        if len(self._terms) == 0:
            raise ValueError("SumRef needs at least one term")

    @property
    def terms(self):
        return self._terms

    def evaluate(self, x):
        result = self._terms[0].evaluate(x)
        for term in self._terms[1:]:
            result = result + term.evaluate(x)
        return result

    def describe(self):
        return {'sum': [term.describe() for term in self._terms]}

    def __repr__(self):
        return '<SumRef {0}>'.format(
            ' + '.join(t.name or 'f' for t in self._terms))


def _evaluate_body(body, x):
    if isinstance(body, ExprNode):
        return eval_expr(body, x)
    return body.evaluate(x)


def _describe_body(body):
    if isinstance(body, ExprNode):
        return str(body)
    return body.describe()


class PiecewiseFn(object):
    """A real function defined by pieces ``[lo, hi)`` tiling its domain.

    At a breakpoint the right-hand piece is used; the final piece is closed
    at its upper bound. Instances are immutable.

    Parameters
    ----------
    pieces : list of `~kbound.Piece` or (lo, hi, body) tuples
        Sorted, contiguous pieces: each ``hi`` equals the next ``lo`` and
        ``lo < hi``. ``body`` is an `~kbound.ExprNode`, `~kbound.CompositeRef`
        or `~kbound.SumRef`. Bounds may be infinite.
    name : str, optional
        Identifier used in reports.

    Examples
    --------
    >>> from kbound import parse_expr
    >>> f = PiecewiseFn([(0., 1., parse_expr('x^2')),
    ...                  (1., np.inf, parse_expr('1 + (x - 1)'))])
    >>> f(1.)
    1.0
    """

    def __init__(self, pieces, name=None):
        pieces = tuple(Piece(float(lo), float(hi), body)
                       for lo, hi, body in pieces)
        if len(pieces) == 0:
            raise ValueError("a piecewise function needs at least one piece")
        for p in pieces:
            if math.isnan(p.lo) or math.isnan(p.hi) or not p.lo < p.hi:
                raise ValueError("invalid piece interval [{0!r}, {1!r})"
                                 .format(p.lo, p.hi))
            if not (isinstance(p.body, (ExprNode, CompositeRef, SumRef))):
                raise TypeError("piece body must be an ExprNode, "
                                "CompositeRef or SumRef")
        for left, right in zip(pieces[:-1], pieces[1:]):
            if left.hi != right.lo:
                raise ValueError("pieces must tile the domain: gap or "
                                 "overlap between {0!r} and {1!r}"
                                 .format(left.hi, right.lo))
        self._pieces = pieces
        self._breaks = np.array([p.lo for p in pieces[1:]])
        self._name = name

    @classmethod
    def from_expr(cls, node, domain=(-np.inf, np.inf), name=None):
        """Single piece function from an expression tree."""
        return cls([(domain[0], domain[1], node)], name=name)

    @property
    def pieces(self):
        return self._pieces

    @property
    def name(self):
        return self._name

    @property
    def domain(self):
        """(lo, hi) of the closed domain."""
        return (self._pieces[0].lo, self._pieces[-1].hi)

    def renamed(self, name):
        """Return the same function under another name."""
        return PiecewiseFn(self._pieces, name=name)

    def contains(self, x):
        """Element-wise domain membership."""
        x = np.asarray(x, dtype=np.float64)
        lo, hi = self.domain
        return (x >= lo) & (x <= hi)

    def covers(self, lo, hi):
        """Whether [lo, hi] lies inside the domain."""
        dlo, dhi = self.domain
        return dlo <= lo and hi <= dhi

    def evaluate(self, x):
        """Evaluate at ``x`` (scalar or array). See `kbound.evaluate`."""
        scalar = np.ndim(x) == 0
        x = np.asarray(x, dtype=np.float64)
        flat = x.ravel()
        if not np.all(self.contains(flat)):
            bad = flat[~self.contains(flat)][0]
            raise DomainError("{0!r} outside domain [{1!r}, {2!r}] of {3}"
                              .format(float(bad), self.domain[0],
                                      self.domain[1], self._name or
                                      'function'))
        if len(self._pieces) == 1:
            result = np.asarray(_evaluate_body(self._pieces[0].body, flat),
                                dtype=np.float64)
        else:
            index = np.searchsorted(self._breaks, flat, side='right')
            result = np.empty(flat.shape, dtype=np.float64)
            for i, piece in enumerate(self._pieces):
                mask = index == i
                if np.any(mask):
                    result[mask] = _evaluate_body(piece.body, flat[mask])
        if scalar:
            return float(result[0])
        return result.reshape(x.shape)

    __call__ = evaluate

    def breakpoint_jumps(self):
        """Absolute jump ``|left value - right value|`` at every interior
        breakpoint, as a list of (breakpoint, jump) tuples.

        The left value is the left body evaluated at the breakpoint itself,
        or at the next float below it where the body is undefined there.
        """
        jumps = []
        for left, right in zip(self._pieces[:-1], self._pieces[1:]):
            b = right.lo
            try:
                lval = _evaluate_body(left.body, np.array([b]))[0]
            except DomainError:
                lval = _evaluate_body(left.body,
                                      np.array([np.nextafter(b, -np.inf)]))[0]
            rval = _evaluate_body(right.body, np.array([b]))[0]
            jumps.append((b, abs(float(lval) - float(rval))))
        return jumps

    def describe(self):
        """Piece table for reports."""
        return {'name': self._name,
                'domain': [_format_bound(self.domain[0]),
                           _format_bound(self.domain[1])],
                'pieces': [{'lo': _format_bound(p.lo),
                            'hi': _format_bound(p.hi),
                            'body': _describe_body(p.body)}
                           for p in self._pieces]}

    def __repr__(self):
        parts = ', '.join('[{0!r}, {1!r}): {2}'.format(
            p.lo, p.hi, p.body if isinstance(p.body, ExprNode)
            else repr(p.body)) for p in self._pieces)
        return '<PiecewiseFn {0}{{{1}}}>'.format(
            (self._name + ' ') if self._name else '', parts)


class FunctionSpec(object):
    """A named function with the classes the user claims it belongs to.

    Claims are assertions only; `~kbound.classify` certifies them.

    Parameters
    ----------
    name : str
    fn : `~kbound.PiecewiseFn`
    claims : iterable of str
        Subset of ``('ClassK', 'ClassKe', 'Convex', 'Concave')``.
    """

    def __init__(self, name, fn, claims=()):
        claims = frozenset(claims)
        unknown = claims - set(CLAIMS)
        if unknown:
            raise ValueError("unknown claim(s) {0}; valid claims are {1}"
                             .format(', '.join(sorted(unknown)),
                                     ', '.join(CLAIMS)))
        self.name = name
        self.fn = fn if fn.name == name else fn.renamed(name)
        self.claims = claims

    def with_claims(self, claims):
        """Copy of this spec with another set of claims."""
        return FunctionSpec(self.name, self.fn, claims)

    def __repr__(self):
        return '<FunctionSpec {0}: {1} claims={{{2}}}>'.format(
            self.name, self.fn, ', '.join(c for c in CLAIMS
                                          if c in self.claims))


def evaluate(f, x):
    """Evaluate a piecewise function.

    Parameters
    ----------
    f : `~kbound.PiecewiseFn`
    x : float or `~numpy.ndarray`

    Returns
    -------
    value : float or `~numpy.ndarray`
        Value of the piece containing ``x``; at a breakpoint the right-hand
        piece is used.

    Raises
    ------
    DomainError
        If ``x`` lies outside the domain of ``f`` or a piece body cannot be
        evaluated.
    """
    return f.evaluate(x)


def compose_shift(base, arg_shift, value_offset, name=None):
    """Return ``x -> base(x + arg_shift) + value_offset`` as a one-piece
    function wrapping a `~kbound.CompositeRef`.

    The result evaluates with exactly the floating point operations of the
    expression above, so ``evaluate(compose_shift(f, a, b), x)`` equals
    ``evaluate(f, x + a) + b`` bit for bit.

    Parameters
    ----------
    base : `~kbound.PiecewiseFn`
    arg_shift, value_offset : float
    name : str, optional

    Returns
    -------
    shifted : `~kbound.PiecewiseFn`
        Defined on the domain of ``base`` moved by ``-arg_shift``.
    """
    lo, hi = base.domain
    return PiecewiseFn([(lo - arg_shift, hi - arg_shift,
                         CompositeRef(base, arg_shift, value_offset))],
                       name=name)


def sample(f, window, n):
    """Sample a function on ``n`` uniformly spaced points of ``window``,
    both endpoints included.

    Parameters
    ----------
    f : `~kbound.PiecewiseFn`
    window : (float, float)
    n : int
        At least 2.

    Returns
    -------
    samples : list of (float, float)
        (x, f(x)) pairs.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    lo, hi = window
    if not f.covers(lo, hi):
        raise DomainError("window [{0!r}, {1!r}] outside domain [{2!r}, "
                          "{3!r}]".format(lo, hi, f.domain[0], f.domain[1]))
    x = np.linspace(lo, hi, n)
    y = f.evaluate(x)
    return [(float(xi), float(yi)) for xi, yi in zip(x, y)]
