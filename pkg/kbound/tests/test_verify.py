# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Test the counterexample search and the lemma pipeline."""

import warnings

import numpy as np
from numpy.testing import assert_allclose
import pytest
from astropy.utils.exceptions import AstropyUserWarning

from kbound import (LemmaConfig, TailViolationWarning, build_artifacts,
                    search_counterexample, search_samples, certify_lemma,
                    get_function, read_functions, CONVEX_CASE, CONCAVE_CASE,
                    BOUND_HOLDS_ON_GRID, COUNTEREXAMPLE, CERTIFIED,
                    HYPOTHESIS_FAILED, INCONCLUSIVE)


def fn(name):
    return get_function(name).fn


def convex_beta(alpha1, alpha2, A, window):
    cfg = LemmaConfig(CONVEX_CASE, A, window)
    return build_artifacts(fn(alpha1), fn(alpha2), cfg).beta


class TestSearch:
    def setup_class(self):
        self.window = (-1., 5.)
        self.beta = convex_beta('identity', 'square', 1., self.window)

    def search(self, **kwargs):
        kwargs.setdefault('n', 64)
        kwargs.setdefault('max_threads', 1)
        return search_counterexample(fn('identity'), fn('square'), self.beta,
                                     1., self.window, **kwargs)

    def test_bound_holds(self):
        res = self.search()
        assert res.verdict == BOUND_HOLDS_ON_GRID
        assert res.max_gap <= 1.e-9
        assert res.points_evaluated == 3 * 64 * 64
        assert res.refinement_levels_used == 3
        assert res.rectangle['x1'] == [-1., 5.]
        assert res.rectangle['x2'] == [0., 1.]
        assert res.tail.violations == []
        assert res.tail.checked == 30

    def test_oracle_equivalence(self):
        """Level 0 equals an exhaustive loop over the same grid."""
        n = 1001
        res = self.search(n=n, levels=1, nbands=1)
        x1 = np.linspace(-1., 5., n)
        x2 = np.linspace(0., 1., n)
        a1 = fn('identity')(x1)
        a2 = fn('square')(x2)
        best, where = -np.inf, None
        for i in range(n):
            gap = (a1[i] + a2) - self.beta(x1[i] + x2)
            j = int(np.argmax(gap))
            if gap[j] > best:
                best, where = gap[j], (x1[i], x2[j])
        assert res.max_gap == best
        assert (res.argmax.x1, res.argmax.x2) == where

    def test_near_equality(self):
        # beta is 1.01 u above 0
        gap = (-0.5 + 1.) - self.beta(0.5)
        assert_allclose(gap, -0.005, rtol=1.e-12)

    @pytest.mark.parametrize('nbands', [4, 16])
    def test_partition_independence(self, nbands):
        ref = self.search(nbands=1)
        res = self.search(nbands=nbands)
        assert res.max_gap == ref.max_gap
        assert res.argmax == ref.argmax
        threaded = self.search(nbands=nbands, max_threads=4)
        assert threaded.max_gap == ref.max_gap
        assert threaded.argmax == ref.argmax

    def test_refinement_soundness(self):
        gaps = [self.search(levels=k).max_gap for k in (1, 2, 3, 4)]
        assert all(b >= a for a, b in zip(gaps[:-1], gaps[1:]))
        res = self.search(levels=4)
        assert len(res.level_max_gaps) == 4
        assert all(b >= a for a, b in zip(res.level_max_gaps[:-1],
                                           res.level_max_gaps[1:]))

    def test_wrong_beta(self, data_path):
        beta = read_functions(data_path('beta_wrong.txt'))['beta'].fn
        res = search_counterexample(fn('identity'), fn('square'), beta, 1.,
                                    self.window, n=64, max_threads=1)
        assert res.verdict == COUNTEREXAMPLE
        assert res.max_gap > 0.1
        assert res.argmax.gap == res.max_gap
        assert_allclose(res.argmax.lhs - res.argmax.rhs, res.max_gap)

    def test_samples(self):
        samples = search_samples(fn('identity'), fn('square'), self.beta, 1.,
                                 self.window, n=16)
        assert samples['gap'].shape == (16, 16)
        assert samples['x1'][0, 0] == -1.
        assert samples['x2'][0, -1] == 1.
        assert np.max(samples['gap']) <= 1.e-9

    def test_validation(self):
        with pytest.raises(ValueError):
            self.search(n=1)
        with pytest.raises(ValueError):
            self.search(levels=0)


def test_identity_equality():
    window = (-1., 5.)
    beta = convex_beta('identity', 'identity', 1., window)
    res = search_counterexample(fn('identity'), fn('identity'), beta, 1.,
                                window, n=32, max_threads=1)
    assert res.max_gap == 0.
    assert res.verdict == BOUND_HOLDS_ON_GRID
    # the first maximum in grid order is the corner of the rectangle
    assert res.argmax.x1 == -1.
    assert res.argmax.x2 == 0.


def cell_gap(samples, x1, x2):
    """Largest gap over the grid cell around (x1, x2)."""
    i = int(np.argmin(np.abs(samples['x1'][:, 0] - x1)))
    j = int(np.argmin(np.abs(samples['x2'][0, :] - x2)))
    return samples['gap'][max(i - 1, 0):i + 2, max(j - 1, 0):j + 2].max()


# alpha1, alpha2, x where alpha1(-x) + alpha2(x) == beta(0)
EQUALITY = [
    ('identity', 'square', 1.),
    ('identity', 'identity', 0.5),
    ('identity', 'identity', 0.3),
]


@pytest.mark.parametrize('alpha1,alpha2,x', EQUALITY)
def test_equality_is_reached(alpha1, alpha2, x):
    window = (-1., 5.)
    beta = convex_beta(alpha1, alpha2, 1., window)
    tol_abs = LemmaConfig(CONVEX_CASE, 1., window).tol.tol_abs
    for n in (16, 25, 64):
        samples = search_samples(fn(alpha1), fn(alpha2), beta, 1., window,
                                 n=n)
        assert cell_gap(samples, -x, x) >= -tol_abs
        assert np.max(samples['gap']) <= tol_abs


def test_equality_corner_identity_square():
    window = (-1., 5.)
    beta = convex_beta('identity', 'square', 1., window)
    samples = search_samples(fn('identity'), fn('square'), beta, 1., window,
                             n=32)
    assert samples['x1'][0, -1] == -1.
    assert samples['x2'][0, -1] == 1.
    assert samples['gap'][0, -1] == 0.


# alpha1, alpha2, lemma, A, window
POSITIVE = [
    ('identity', 'identity', CONVEX_CASE, 1., (-1., 5.)),
    ('identity', 'square', CONVEX_CASE, 1., (-1., 5.)),
    ('double', 'square', CONVEX_CASE, 2., (-2., 5.)),
    ('expm1', 'square', CONVEX_CASE, 0.5, (-1., 2.)),
    ('sinh', 'tanh', CONCAVE_CASE, np.inf, (-10., 10.)),
]


@pytest.mark.parametrize('alpha1,alpha2,lemma,A,window', POSITIVE)
def test_positive_catalog(alpha1, alpha2, lemma, A, window):
    cfg = LemmaConfig(lemma, A, window, n=256, levels=3)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', AstropyUserWarning)
        report = certify_lemma(get_function(alpha1), get_function(alpha2),
                               cfg, max_threads=2)
    assert report.verdict == CERTIFIED
    assert report.failed == []
    assert report.search.max_gap <= 1.e-9
    assert report.artifacts.beta(0.) == 0.
    diagnostics = report.artifacts.diagnostics
    assert diagnostics['alpha2_exact'] is True
    # None in the concave case, which has no majorant
    assert diagnostics['majorant_identity_exact'] is not False
    if lemma == CONVEX_CASE:
        assert diagnostics['majorant_identity_exact'] is True
        assert diagnostics['majorant_identity_points'] > 0


def test_tail_violation_is_a_note():
    cfg = LemmaConfig(CONVEX_CASE, 0.5, (-1., 2.), n=64)
    with pytest.warns(TailViolationWarning):
        report = certify_lemma(get_function('expm1'), get_function('square'),
                               cfg, max_threads=1)
    assert report.verdict == CERTIFIED
    assert report.search.tail.violations
    assert any('beyond the window' in note for note in report.search.notes)

    cfg = LemmaConfig(CONVEX_CASE, 0.5, (-1., 2.), n=64, strict_tail=True)
    with pytest.warns(TailViolationWarning):
        report = certify_lemma(get_function('expm1'), get_function('square'),
                               cfg, max_threads=1)
    assert report.search.verdict == INCONCLUSIVE
    assert report.verdict == INCONCLUSIVE


def test_tail_skips_overflow():
    cfg = LemmaConfig(CONCAVE_CASE, np.inf, (-10., 10.), n=32)
    report = certify_lemma(get_function('sinh'), get_function('tanh'), cfg,
                           max_threads=1)
    tail = report.search.tail
    assert tail.skipped
    assert tail.checked + len(tail.skipped) == 30
    assert tail.violations == []


def test_concave_sqrt_counterexample():
    cfg = LemmaConfig(CONCAVE_CASE, 4., (-4., 5.), n=64)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', AstropyUserWarning)
        report = certify_lemma(get_function('reflected_sqrt'),
                               get_function('sqrt'), cfg, max_threads=1)
    assert [h.verdict for h in report.hypotheses] == ['CERTIFIED_ON_GRID'] * 4
    assert report.verdict == COUNTEREXAMPLE
    assert report.search.argmax.u < 0.
    assert report.search.max_gap > 1.
    assert report.artifacts.left_slope == 1.e6


@pytest.mark.parametrize('alpha1,alpha2,A,window', [
    ('identity', 'quadruple', 1., (-1., 5.)),
    ('expm1', 'square', 1., (-1., 2.)),
])
def test_hypothesis_failed(alpha1, alpha2, A, window):
    cfg = LemmaConfig(CONVEX_CASE, A, window, n=64)
    report = certify_lemma(get_function(alpha1), get_function(alpha2), cfg)
    assert report.verdict == HYPOTHESIS_FAILED
    assert [h.property for h in report.failed] == ['DOMINATION']
    assert report.artifacts is None
    assert report.search is None


def test_missing_claims_are_noted():
    cfg = LemmaConfig(CONVEX_CASE, 1., (-1., 5.), n=32)
    alpha2 = get_function('identity').with_claims(['ClassK'])
    report = certify_lemma(get_function('identity'), alpha2, cfg,
                           max_threads=1)
    assert report.verdict == CERTIFIED
    assert any('does not claim Convex' in note for note in report.notes)


def test_beta_override(data_path):
    beta = read_functions(data_path('beta_wrong.txt'))['beta'].fn
    cfg = LemmaConfig(CONVEX_CASE, 1., (-1., 5.), n=64)
    report = certify_lemma(get_function('identity'), get_function('square'),
                           cfg, beta=beta, max_threads=1)
    assert report.verdict == COUNTEREXAMPLE
    assert report.search.max_gap > 0.1


def test_determinism_across_thread_caps():
    cfg = LemmaConfig(CONVEX_CASE, 1., (-1., 5.), n=64)
    reports = [certify_lemma(get_function('identity'),
                             get_function('square'), cfg, max_threads=t)
               for t in (1, 8)]
    assert reports[0].search.max_gap == reports[1].search.max_gap
    assert reports[0].search.argmax == reports[1].search.argmax
