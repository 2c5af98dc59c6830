# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""A minimal expression language for scalar functions of one variable.

Grammar (whitespace between tokens is ignored)::

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := unary ('^' factor)?
    unary   := '-' unary | primary
    primary := number | 'x' | ident '(' args ')' | '(' expr ')'

``^`` is right-associative and unary minus binds tighter than the base of
``^``, so ``-x^2`` is ``(-x)^2``.
"""

import re

import numpy as np

__all__ = ['ExprNode', 'Constant', 'Variable', 'Neg', 'BinOp', 'Call',
           'ParseError', 'DomainError', 'parse_expr', 'eval_expr',
           'BUILTINS']


class ParseError(ValueError):
    """Raised when an expression text does not follow the grammar.

    Parameters
    ----------
    offset : int
        Byte offset into the text where the problem was detected.
    expected : str
        Description of what the parser expected at ``offset``.
    message : str
        Human readable description.
    """

    def __init__(self, offset, expected, message):
        self.offset = offset
        self.expected = expected
        self.message = message
        super(ParseError, self).__init__(
            "{0} at offset {1} (expected {2})".format(message, offset,
                                                      expected))


class DomainError(ValueError):
    """Raised when a function is evaluated outside its mathematical domain
    or produces a non-finite value."""
    pass


def _check_finite(value, what):
    if not np.all(np.isfinite(value)):
        raise DomainError("{0} produced a non-finite value".format(what))
    return value


def _require(mask, name, value, condition):
    if np.any(~mask):
        bad = np.asarray(value)[~mask] if np.ndim(value) else value
        bad = float(np.ravel(bad)[0])
        raise DomainError("{0}() requires an argument {1}, got {2!r}"
                          .format(name, condition, bad))


def _log(a):
    _require(a > 0., 'log', a, '> 0')
    return np.log(a)


def _sqrt(a):
    _require(a >= 0., 'sqrt', a, '>= 0')
    return np.sqrt(a)


# name: (arity, implementation)
BUILTINS = {
    'exp': (1, np.exp),
    'log': (1, _log),
    'sqrt': (1, _sqrt),
    'abs': (1, np.abs),
    'tanh': (1, np.tanh),
    'sinh': (1, np.sinh),
    'atan': (1, np.arctan),
    'min': (2, np.minimum),
    'max': (2, np.maximum),
    'pow': (2, np.power),
}

_BINARY = {
    '+': np.add,
    '-': np.subtract,
    '*': np.multiply,
    '/': np.true_divide,
    '^': np.power,
}

# Binding strength of the printed form of each node. A child printed in a
# slot that needs a stronger binding is parenthesized.
_PREC_SUM = 1
_PREC_PRODUCT = 2
_PREC_POWER = 3
_PREC_UNARY = 4


class ExprNode(object):
    """Base class of the expression tree.

    Nodes are immutable after construction, compare structurally with
    ``==`` and print (``str``) in a form that parses back to an equal
    tree.
    """

    __slots__ = ()
    _prec = _PREC_UNARY

    def _key(self):
        raise NotImplementedError

    def _eval(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return (type(self) is type(other) and self._key() == other._key())

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __setattr__(self, name, value):
        raise AttributeError("expression nodes are immutable")

    def __repr__(self):
        return "<{0} {1!s}>".format(type(self).__name__, self)

    def __call__(self, x):
        return eval_expr(self, x)


class Constant(ExprNode):
    """A real literal."""
    __slots__ = ('value',)

    def __init__(self, value):
        object.__setattr__(self, 'value', float(value))

    def _key(self):
        return (self.value,)

    def _eval(self, x):
        return np.full(np.shape(x), self.value)

    def __str__(self):
        s = repr(self.value)
        if self.value < 0. or s.startswith('-'):
            return '(' + s + ')'
        return s


class Variable(ExprNode):
    """The free variable ``x``."""
    __slots__ = ()

    def _key(self):
        return ()

    def _eval(self, x):
        return x

    def __str__(self):
        return 'x'


class Neg(ExprNode):
    """Unary negation."""
    __slots__ = ('child',)

    def __init__(self, child):
        object.__setattr__(self, 'child', child)

    def _key(self):
        return (self.child,)

    def _eval(self, x):
        return np.negative(self.child._eval(x))

    def __str__(self):
        return '-' + _wrap(self.child, _PREC_UNARY)


class BinOp(ExprNode):
    """Binary operation, one of ``+ - * / ^``."""
    __slots__ = ('op', 'left', 'right')

    def __init__(self, op, left, right):
        if op not in _BINARY:
            raise ValueError("unknown operator {0!r}".format(op))
        object.__setattr__(self, 'op', op)
        object.__setattr__(self, 'left', left)
        object.__setattr__(self, 'right', right)

    @property
    def _prec(self):
        if self.op in '+-':
            return _PREC_SUM
        if self.op in '*/':
            return _PREC_PRODUCT
        return _PREC_POWER

    def _key(self):
        return (self.op, self.left, self.right)

    def _eval(self, x):
        result = _BINARY[self.op](self.left._eval(x), self.right._eval(x))
        return _check_finite(result, "operator '{0}'".format(self.op))

    def __str__(self):
        if self.op == '^':
            # base is a unary, exponent is a factor (right-associative)
            return (_wrap(self.left, _PREC_UNARY) + '^' +
                    _wrap(self.right, _PREC_POWER))
        prec = self._prec
        # left-associative: the right operand must bind strictly tighter
        sep = ' ' + self.op + ' ' if prec == _PREC_SUM else self.op
        return (_wrap(self.left, prec) + sep + _wrap(self.right, prec + 1))


class Call(ExprNode):
    """Call of a builtin function."""
    __slots__ = ('name', 'args')

    def __init__(self, name, args):
        if name not in BUILTINS:
            raise ValueError("unknown function {0!r}".format(name))
        args = tuple(args)
        if len(args) != BUILTINS[name][0]:
            raise ValueError("{0}() takes {1} argument(s), got {2}"
                             .format(name, BUILTINS[name][0], len(args)))
        object.__setattr__(self, 'name', name)
        object.__setattr__(self, 'args', args)

    def _key(self):
        return (self.name, self.args)

    def _eval(self, x):
        func = BUILTINS[self.name][1]
        result = func(*[arg._eval(x) for arg in self.args])
        return _check_finite(result, self.name + '()')

    def __str__(self):
        return '{0}({1})'.format(self.name,
                                 ', '.join(str(a) for a in self.args))


def _wrap(node, prec):
    s = str(node)
    if node._prec < prec:
        return '(' + s + ')'
    return s


# -----------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE | re.ASCII)


def _tokenize(text):
    """Return a list of (kind, value, offset) tuples ending with an 'end'
    token at offset len(text)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, 'token',
                             'unexpected character {0!r}'.format(text[pos]))
        kind = m.lastgroup
        if kind != 'ws':
            tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _Parser(object):
    """Recursive descent parser, one method per grammar rule."""

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept(self, value):
        kind, tokval, _ = self.peek
        if kind == 'op' and tokval == value:
            self.pos += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            kind, tokval, offset = self.peek
            found = 'end of input' if kind == 'end' else repr(tokval)
            raise ParseError(offset, repr(value),
                             'unexpected {0}'.format(found))

    def parse(self):
        node = self.expr()
        kind, tokval, offset = self.peek
        if kind != 'end':
            raise ParseError(offset, 'end of input',
                             'trailing input {0!r}'.format(tokval))
        return node

    def expr(self):
        node = self.term()
        while True:
            if self.accept('+'):
                node = BinOp('+', node, self.term())
            elif self.accept('-'):
                node = BinOp('-', node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            if self.accept('*'):
                node = BinOp('*', node, self.factor())
            elif self.accept('/'):
                node = BinOp('/', node, self.factor())
            else:
                return node

    def factor(self):
        base = self.unary()
        if self.accept('^'):
            return BinOp('^', base, self.factor())
        return base

    def unary(self):
        if self.accept('-'):
            return Neg(self.unary())
        return self.primary()

    def primary(self):
        kind, tokval, offset = self.peek
        if kind == 'number':
            self.advance()
            value = float(tokval)
            if not np.isfinite(value):
                raise ParseError(offset, 'finite number',
                                 'literal {0!r} overflows'.format(tokval))
            return Constant(value)
        if kind == 'ident':
            self.advance()
            if tokval == 'x':
                return Variable()
            if tokval not in BUILTINS:
                raise ParseError(offset, "builtin function or 'x'",
                                 'unknown identifier {0!r}'.format(tokval))
            self.expect('(')
            args = [self.expr()]
            while self.accept(','):
                args.append(self.expr())
            self.expect(')')
            arity = BUILTINS[tokval][0]
            if len(args) != arity:
                raise ParseError(offset,
                                 '{0} argument(s)'.format(arity),
                                 '{0}() called with {1} argument(s)'
                                 .format(tokval, len(args)))
            return Call(tokval, args)
        if self.accept('('):
            node = self.expr()
            self.expect(')')
            return node
        found = 'end of input' if kind == 'end' else repr(tokval)
        raise ParseError(offset, 'primary', 'unexpected {0}'.format(found))


def parse_expr(text):
    """Parse an expression of the variable ``x``.

    Parameters
    ----------
    text : str
        ASCII expression text, e.g. ``'exp(x) - 1'``.

    Returns
    -------
    node : `~kbound.ExprNode`

    Raises
    ------
    ParseError
        On unknown identifiers, arity mismatches, unbalanced parentheses or
        trailing input.

    Examples
    --------
    >>> parse_expr('x^2') == BinOp('^', Variable(), Constant(2.))
    True
    """
    if not text or not text.strip():
        raise ParseError(0, 'expression', 'empty expression')
    return _Parser(text).parse()


def eval_expr(node, x):
    """Evaluate an expression tree at ``x``.

    Parameters
    ----------
    node : `~kbound.ExprNode`
    x : float or `~numpy.ndarray`
        Finite evaluation point(s). Arrays are evaluated element-wise with
        the same operations used for scalars.

    Returns
    -------
    value : float or `~numpy.ndarray`

    Raises
    ------
    DomainError
        If ``x`` is not finite, a builtin receives an argument outside its
        domain or a non-finite value is produced.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("evaluation point must be finite")
    with np.errstate(all='ignore'):
        result = np.asarray(node._eval(x), dtype=np.float64)
    _check_finite(result, 'expression {0!s}'.format(node))
    if scalar:
        return float(result)
    return result
