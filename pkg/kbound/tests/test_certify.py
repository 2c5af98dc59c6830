# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Test grid certification of function properties."""

import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

import kbound
from kbound import (PiecewiseFn, FunctionSpec, PropertyCheckRequest,
                    Tolerances, DomainError, check_property, check_domination,
                    classify, worst_verdict, parse_expr, get_function)
from kbound.certify import (ZERO_AT_ZERO, STRICTLY_INCREASING, NONNEGATIVE,
                            CONVEX, CONCAVE, SUPERADDITIVE,
                            TRANSLATION_CONVEX, TRANSLATION_CONCAVE,
                            REFLECTION, DIFF_QUOTIENT_MONOTONE, ADJACENT,
                            ALL_PAIRS, CERTIFIED_ON_GRID, FALSIFIED,
                            INCONCLUSIVE)


def fn(text, domain=(-np.inf, np.inf)):
    return PiecewiseFn.from_expr(parse_expr(text), domain=domain, name=text)


def check(f, prop, window, **kwargs):
    return check_property(f, PropertyCheckRequest(prop, window, **kwargs))


def test_superadditive_square():
    res = check(get_function('square').fn, SUPERADDITIVE, (0., 10.), n=41)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.max_violation == 0.
    assert res.witness == []
    assert 0. in res.argmax


def test_superadditive_sqrt_falsified():
    res = check(get_function('sqrt').fn, SUPERADDITIVE, (0., 1.), n=11)
    assert res.verdict == FALSIFIED
    assert res.witness == [(1., 1.)]
    assert res.argmax == (1., 1.)
    assert_allclose(res.max_violation, 2. - math.sqrt(2.), rtol=1.e-15)


def test_reflection_square():
    res = check(fn('x^2'), REFLECTION, (-5., 5.), n=21)
    assert res.verdict == CERTIFIED_ON_GRID


def test_reflection_needs_negative_arguments():
    res = check(get_function('square').fn, REFLECTION, (0., 5.), n=21)
    assert res.verdict == INCONCLUSIVE
    assert 'outside domain' in res.reason


def test_translation_concave_outside_domain():
    res = check(get_function('sqrt').fn, TRANSLATION_CONCAVE, (0., 4.), n=21)
    assert res.verdict == INCONCLUSIVE
    assert res.reason.startswith('shifted argument')


def test_translation_concave_certified():
    res = check(fn('min(x, 1)'), TRANSLATION_CONCAVE, (-2., 2.), n=21)
    assert res.verdict == CERTIFIED_ON_GRID
    res = check(fn('min(x, 1)'), TRANSLATION_CONVEX, (-2., 2.), n=21)
    assert res.verdict == FALSIFIED
    assert len(res.witness[0]) == 3


def test_strictly_increasing():
    res = check(fn('x^3'), STRICTLY_INCREASING, (-1., 1.), n=20)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.min_increment > 0.

    res = check(fn('-x'), STRICTLY_INCREASING, (-1., 1.), n=21)
    assert res.verdict == FALSIFIED
    assert len(res.witness) == 1
    assert len(res.witness[0]) == 2
    assert_allclose(res.max_violation, 0.1)

    # flat steps are not falsifying, but not strict either
    res = check(fn('min(x, 1)'), STRICTLY_INCREASING, (0., 2.), n=21)
    assert res.verdict == INCONCLUSIVE
    assert res.min_increment == 0.
    assert 'eps_strict' in res.reason


def test_nonnegative():
    res = check(fn('x - 1'), NONNEGATIVE, (0., 2.), n=21)
    assert res.verdict == FALSIFIED
    assert res.witness == [(0.,)]
    assert res.max_violation == 1.


def test_zero_at_zero():
    res = check(fn('x - 1'), ZERO_AT_ZERO, (-1., 1.))
    assert res.verdict == FALSIFIED
    assert res.witness == [(0.,)]
    res = check(fn('x', domain=(1., 2.)), ZERO_AT_ZERO, (1., 2.))
    assert res.verdict == INCONCLUSIVE


def test_window_outside_domain():
    with pytest.raises(DomainError):
        check(get_function('sqrt').fn, CONVEX, (-1., 1.))


def test_convexity_oracle_agreement():
    """max_violation equals a naive loop over the same samples."""
    f = fn('x*x*x')
    lo, hi = -1., 2.
    sigmas = [0.25, 0.5, 0.75]
    res = check(f, CONVEX, (lo, hi), n=21, sigma_samples=sigmas)
    x = np.linspace(lo, hi, 21)
    fx = f(x)
    best = -np.inf
    for s in sigmas:
        for i in range(len(x)):
            for j in range(len(x)):
                z = min(max(s * x[i] + (1. - s) * x[j], lo), hi)
                v = f(z) - (s * fx[i] + (1. - s) * fx[j])
                best = max(best, v)
    assert res.max_violation == best
    assert res.verdict == FALSIFIED


def test_superadditive_oracle_agreement():
    f = fn('x*x - 0.5*x')
    res = check(f, SUPERADDITIVE, (-1., 3.), n=17)
    x = np.linspace(-1., 3., 17)
    x = x[x >= 0.]
    best = -np.inf
    for a in x:
        for b in x:
            best = max(best, (f(a) + f(b)) - f(a + b))
    assert res.max_violation == best


def test_witness_is_first_maximum():
    # every pair with x or y = 0 is an equality; the first in grid order wins
    res = check(fn('x'), SUPERADDITIVE, (0., 1.), n=5)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.argmax == (0., 0.)


@pytest.mark.parametrize('name,window', [('square', (0., 3.)),
                                         ('quartic', (0., 3.)),
                                         ('expm1', (-2., 2.))])
def test_convexity_implications(name, window):
    """Convexity certification carries over to the derived inequalities."""
    f = get_function(name).fn
    res = check(f, CONVEX, window, n=48)
    assert res.verdict == CERTIFIED_ON_GRID
    for prop in (SUPERADDITIVE, TRANSLATION_CONVEX, DIFF_QUOTIENT_MONOTONE):
        assert check(f, prop, window, n=48).verdict == CERTIFIED_ON_GRID
    if f.domain[0] < 0.:
        assert check(f, REFLECTION, window, n=48).verdict == CERTIFIED_ON_GRID


CONVEX_INEQUALITIES = (SUPERADDITIVE, TRANSLATION_CONVEX, REFLECTION,
                       DIFF_QUOTIENT_MONOTONE)


@pytest.mark.parametrize('f', [fn('x^2'), fn('x^4'),
                               get_function('expm1').fn],
                         ids=['x^2', 'x^4', 'expm1'])
@pytest.mark.parametrize('prop', CONVEX_INEQUALITIES)
def test_convex_inequalities_on_symmetric_window(f, prop):
    res = check(f, prop, (-5., 5.), n=41)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.witness == []


@pytest.mark.parametrize('name', ['square', 'quartic'])
@pytest.mark.parametrize('prop', [SUPERADDITIVE, TRANSLATION_CONVEX,
                                  DIFF_QUOTIENT_MONOTONE])
def test_convex_inequalities_on_half_line(name, prop):
    res = check(get_function(name).fn, prop, (0., 10.), n=41)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.witness == []


@pytest.mark.parametrize('text,window', [('sqrt(x)', (0., 4.)),
                                         ('tanh(x)', (0., 5.)),
                                         ('x^3', (-1., 1.)),
                                         ('x^2', (-2., 2.)),
                                         ('abs(x)', (-1., 1.))])
def test_diff_quotient_agrees_with_convexity(text, window):
    f = fn(text, domain=(window[0], np.inf))
    convex = check(f, CONVEX, window, n=33).verdict
    quotient = check(f, DIFF_QUOTIENT_MONOTONE, window, n=33)
    assert quotient.verdict == convex
    if quotient.verdict == FALSIFIED:
        assert len(quotient.witness[0]) == 4


def test_refinement_never_certifies_a_falsified_property():
    f = fn('sqrt(x)', domain=(0., np.inf))
    for n in (9, 17, 33, 65):
        assert check(f, CONVEX, (0., 4.), n=n).verdict == FALSIFIED
    f = fn('x^3')
    for n in (5, 9, 17, 33):
        assert check(f, CONVEX, (-1., 1.), n=n).verdict == FALSIFIED


def test_adjacent_pairs():
    f = get_function('expm1').fn
    req = PropertyCheckRequest(CONVEX, (-2., 2.), n=600)
    assert req.pair_strategy == ADJACENT
    assert check_property(f, req).verdict == CERTIFIED_ON_GRID
    req = PropertyCheckRequest(CONVEX, (-2., 2.), n=600, seed=3)
    res = check_property(f, req)
    assert res.grid['seed'] == 3
    assert res.verdict == CERTIFIED_ON_GRID
    assert check(fn('sqrt(x)', domain=(0., np.inf)), CONVEX, (0., 4.),
                 n=600).verdict == FALSIFIED


def test_request_defaults():
    req = PropertyCheckRequest(TRANSLATION_CONCAVE, (0., 8.))
    assert req.n == kbound.conf.grid
    assert req.c_samples == [0., -1., -2., -4.]
    assert req.sigma_samples == [0.25, 0.5, 0.75]
    assert req.pair_strategy == ALL_PAIRS
    with kbound.conf.set_temp('grid', 17):
        assert PropertyCheckRequest(CONVEX, (0., 1.)).n == 17
    with kbound.conf.set_temp('all_pairs_limit', 8):
        assert PropertyCheckRequest(CONVEX, (0., 1.),
                                    n=9).pair_strategy == ADJACENT


@pytest.mark.parametrize('kwargs', [
    dict(property='MONOTONE', window=(0., 1.)),
    dict(property=CONVEX, window=(1., 0.)),
    dict(property=CONVEX, window=(0., np.inf)),
    dict(property=CONVEX, window=(0., 1.), n=2),
    dict(property=CONVEX, window=(0., 1.), sigma_samples=[1.5]),
    dict(property=CONVEX, window=(0., 1.), sigma_samples=[]),
    dict(property=TRANSLATION_CONVEX, window=(0., 1.), c_samples=[-1.]),
    dict(property=TRANSLATION_CONCAVE, window=(0., 1.), c_samples=[1.]),
    dict(property=CONVEX, window=(0., 1.), pair_strategy='SOME'),
])
def test_request_validation(kwargs):
    with pytest.raises(ValueError):
        PropertyCheckRequest(**kwargs)


def test_tolerances():
    tol = Tolerances()
    assert tol.tol_abs == kbound.conf.tol_abs
    assert_allclose(tol.threshold(np.array([0., 10.])), [2.e-9, 1.1e-8])
    with kbound.conf.set_temp('tol_abs', 1.e-6):
        assert Tolerances().tol_abs == 1.e-6
    for bad in (0., -1., np.inf, np.nan):
        with pytest.raises(ValueError):
            Tolerances(tol_abs=bad)


def test_tolerance_decides_verdict():
    f = fn('x + 1e-7*x^2')
    req = PropertyCheckRequest(CONCAVE, (0., 1.), n=11)
    assert check_property(f, req).verdict == FALSIFIED
    loose = Tolerances(tol_abs=1.e-6)
    assert check_property(f, req, loose).verdict == CERTIFIED_ON_GRID


def test_domination_examples():
    identity = get_function('identity').fn

    res = check_domination(identity, get_function('square').fn, 1.)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.max_violation == 0.

    res = check_domination(identity, get_function('quadruple').fn, 1.)
    assert res.verdict == FALSIFIED
    assert res.witness == [(1.,)]
    assert res.max_violation == 3.

    res = check_domination(get_function('reflected_sqrt').fn,
                           get_function('sqrt').fn, 4.)
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.max_violation == 0.


def test_domination_infinite_A():
    res = check_domination(get_function('sinh').fn, get_function('tanh').fn,
                           np.inf, window=(-10., 10.))
    assert res.verdict == CERTIFIED_ON_GRID
    assert res.grid['window'] == [0., 10.]
    with pytest.raises(ValueError):
        check_domination(get_function('sinh').fn, get_function('tanh').fn,
                         np.inf)


def test_domination_domain():
    with pytest.raises(DomainError):
        check_domination(get_function('sqrt').fn, get_function('sqrt').fn,
                         1.)


class TestClassify:
    def test_square(self):
        results = classify(get_function('square'), (0., 10.))
        assert [r.property for r in results] == ['CLASS_K', 'CONVEX']
        assert all(r.verdict == CERTIFIED_ON_GRID for r in results)
        assert [c.property for c in results[0].components] == [
            'DOMAIN_COVERAGE', ZERO_AT_ZERO, STRICTLY_INCREASING, NONNEGATIVE]

    def test_tanh(self):
        results = classify(get_function('tanh'), (0., 10.))
        assert [r.property for r in results] == ['CLASS_K', 'CONCAVE']
        assert all(r.verdict == CERTIFIED_ON_GRID for r in results)

    def test_shifted_fails_zero_at_zero(self):
        spec = FunctionSpec('shifted', fn('x - 1'), ['ClassK'])
        result, = classify(spec, (0., 10.))
        assert result.verdict == FALSIFIED
        assert result.failed_property == ZERO_AT_ZERO
        assert result.witness == [(0.,)]

    def test_domain_coverage(self):
        spec = get_function('sqrt').with_claims(['ClassKe'])
        result, = classify(spec, (-1., 1.))
        assert result.verdict == FALSIFIED
        assert result.failed_property == 'DOMAIN_COVERAGE'
        assert result.witness == [(-1.,)]

    def test_window_intersects_domain(self):
        spec = get_function('sqrt').with_claims(['Convex', 'Concave'])
        convex, concave = classify(spec, (-5., 5.), n=64)
        assert convex.verdict == FALSIFIED
        assert concave.verdict == CERTIFIED_ON_GRID
        assert concave.grid['window'] == [0., 5.]

    def test_no_claims(self):
        with pytest.raises(ValueError):
            classify(get_function('sqrt').with_claims([]), (0., 1.))


def test_worst_verdict():
    assert worst_verdict([]) == CERTIFIED_ON_GRID
    assert worst_verdict([{'verdict': CERTIFIED_ON_GRID},
                          {'verdict': INCONCLUSIVE}]) == INCONCLUSIVE
    assert worst_verdict([{'verdict': FALSIFIED},
                          {'verdict': INCONCLUSIVE}]) == FALSIFIED
