# Licensed under a 3-clause BSD style license - see LICENSE.rst

from io import StringIO
import json
import math
import os

import numpy as np
from numpy.testing import assert_allclose
import pytest
from astropy.table import Table

import kbound
from kbound import FunctionFileError, read_functions, write_json
from kbound.io import to_builtin, write_function_csv, write_search_csv


def read_string(text, **kwargs):
    return read_functions(StringIO(text), **kwargs)


def test_read_functions_file(data_path):
    functions = read_functions(data_path('functions.txt'))
    assert list(functions) == ['shifted', 'sqrt_convex', 'signed_sqrt',
                               'ramp', 'line', 'unclaimed']

    ramp = functions['ramp']
    assert len(ramp.fn.pieces) == 2
    assert ramp.fn.domain == (0., math.inf)
    assert ramp.claims == frozenset(['ClassK', 'Convex'])
    assert ramp.fn(0.5) == 0.25
    assert ramp.fn(3.) == 5.

    assert functions['sqrt_convex'].fn.domain == (0., math.inf)
    assert functions['shifted'].fn.domain == (-math.inf, math.inf)
    assert functions['unclaimed'].claims == frozenset()
    assert functions['signed_sqrt'].fn(-4.) == -2.


def test_read_functions_comments_and_blank_lines():
    functions = read_string("# header\n\n"
                            "function f: x   # trailing\n"
                            "    # indented comment\n"
                            "    claims: ClassK,ClassKe\n")
    assert functions['f'].claims == frozenset(['ClassK', 'ClassKe'])


def test_read_functions_bounds():
    functions = read_string("function f: x\n"
                            "    domain: (-inf, 2]\n")
    assert functions['f'].fn.domain == (-math.inf, 2.)


@pytest.mark.parametrize('text,lineno', [
    ("function f: x +\n", 1),
    ("claims: ClassK\n", 1),
    ("function f: x\nfunction f: x^2\n", 2),
    ("function f: x\n    on [0, 1): x\n", 2),
    ("function f: piecewise\n    domain: [0, 1]\n", 2),
    ("function f: piecewise\n", 1),
    ("function f: piecewise\n    on [0, 1): x\n    on [1, 2]: x + 1\n", 1),
    ("function f: piecewise\n    on [0, 1): x\n    on [2, 3]: x\n", 1),
    ("function f: x\n    claims: ClassK, Monotone\n", 2),
    ("function f: x\n    domain: [0, nope]\n", 2),
    ("function f: x\n    something else\n", 2),
    ("function f:\n", 1),
    ("function f: piecewise\n    on [0, 1]: x\n    on [1, 2]: x\n", 2),
    ("function f: piecewise\n    on (-inf, 0): -x^2\n    on [0, 1]: x^2\n"
     "    on [1, 2): 2*x - 1\n", 3),
])
def test_read_functions_errors(text, lineno):
    with pytest.raises(FunctionFileError) as excinfo:
        read_string(text)
    assert excinfo.value.lineno == lineno
    assert str(excinfo.value).startswith('line {0}:'.format(lineno))


def test_closed_bracket_only_on_last_piece():
    text = ("function f: piecewise\n"
            "    on [0, 1]: x\n"
            "    on [1, 2): x\n")
    with pytest.raises(FunctionFileError) as excinfo:
        read_string(text)
    assert "']'" in str(excinfo.value)

    functions = read_string("function f: piecewise\n"
                            "    on [0, 1): x\n"
                            "    on [1, 2]: x\n")
    assert functions['f'].fn.domain == (0., 2.)


def test_read_functions_malformed_file(data_path):
    with pytest.raises(FunctionFileError) as excinfo:
        read_functions(data_path('malformed.txt'))
    assert excinfo.value.lineno == 4
    assert 'offset' in str(excinfo.value)


def test_continuity_tolerance():
    text = ("function f: piecewise\n"
            "    on [0, 1): x\n"
            "    on [1, 2]: x + 1e-6\n")
    with pytest.raises(FunctionFileError):
        read_string(text)
    functions = read_string(text, tol_cont=1.e-5)
    assert len(functions['f'].fn.pieces) == 2
    with kbound.conf.set_temp('tol_cont', 1.e-5):
        read_string(text)


def test_to_builtin():
    obj = {'a': np.float64(1.5), 'b': np.inf, 'c': -np.inf, 'd': np.nan,
           'e': (1, 2), 'f': np.array([1., 2.]), 'g': np.bool_(True),
           'h': np.int64(3), 'i': None,
           'j': kbound.get_function('identity').fn}
    d = to_builtin(obj)
    assert d['a'] == 1.5
    assert d['b'] == 'inf'
    assert d['c'] == '-inf'
    assert d['d'] == 'nan'
    assert d['e'] == [1, 2]
    assert d['f'] == [1., 2.]
    assert d['g'] is True
    assert d['h'] == 3
    assert d['i'] is None
    assert d['j']['pieces'][0]['body'] == 'x'


def test_write_json_is_deterministic():
    result = kbound.check_domination(kbound.get_function('identity').fn,
                                     kbound.get_function('square').fn, 1.,
                                     n=11)
    f1, f2 = StringIO(), StringIO()
    write_json(result, f1)
    write_json(result, f2)
    assert f1.getvalue() == f2.getvalue()
    d = json.loads(f1.getvalue())
    assert d['property'] == 'DOMINATION'
    assert d['verdict'] == 'CERTIFIED_ON_GRID'
    assert d['grid']['n'] == 11


def test_write_json_file(tmpdir):
    fname = str(tmpdir.join('out.json'))
    write_json({'x': [1., np.inf]}, fname)
    with open(fname) as f:
        assert json.load(f) == {'x': [1., 'inf']}


def test_write_function_csv(tmpdir):
    fname = str(tmpdir.join('square.csv'))
    write_function_csv(kbound.get_function('square').fn, (0., 2.), 5, fname)
    t = Table.read(fname, format='ascii.csv')
    assert t.colnames == ['x', 'value']
    assert_allclose(t['x'], [0., 0.5, 1., 1.5, 2.])
    assert_allclose(t['value'], [0., 0.25, 1., 2.25, 4.])


def test_write_search_csv(tmpdir):
    fname = str(tmpdir.join('search.csv'))
    x1, x2 = np.meshgrid([0., 1.], [0., 1., 2.], indexing='ij')
    write_search_csv({'x1': x1, 'x2': x2, 'gap': x1 - x2}, fname)
    assert os.path.exists(fname)
    t = Table.read(fname, format='ascii.csv')
    assert t.colnames == ['x1', 'x2', 'gap']
    assert len(t) == 6
    assert_allclose(t['gap'], [0., -1., -2., 1., 0., -1.])
