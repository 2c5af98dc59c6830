# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Counterexample search and end-to-end lemma certification."""

from concurrent.futures import ThreadPoolExecutor
import math
import warnings

import numpy as np
from astropy import log
from astropy.utils.exceptions import AstropyUserWarning

from .expr import DomainError
from .certify import (Tolerances, check_domination, classify, worst_verdict,
                      FALSIFIED, INCONCLUSIVE)
from .construct import build_artifacts, CONVEX_CASE
from .utils import Result, get_max_threads

__all__ = ['SearchPoint', 'SearchResult', 'LemmaReport',
           'TailViolationWarning', 'search_counterexample', 'search_samples',
           'certify_lemma', 'BOUND_HOLDS_ON_GRID', 'COUNTEREXAMPLE',
           'CERTIFIED', 'HYPOTHESIS_FAILED']

BOUND_HOLDS_ON_GRID = 'BOUND_HOLDS_ON_GRID'
COUNTEREXAMPLE = 'COUNTEREXAMPLE'
CERTIFIED = 'CERTIFIED'
HYPOTHESIS_FAILED = 'HYPOTHESIS_FAILED'

# Number of log-spaced x1 values of the tail spot check.
TAIL_POINTS = 10


class TailViolationWarning(AstropyUserWarning):
    """The bound fails beyond the search window."""
    pass


class SearchPoint(Result):
    """One evaluated point: x1, x2, u = x1 + x2, lhs, rhs, gap = lhs - rhs.
    """


class SearchResult(Result):
    """Outcome of `search_counterexample`.

    Keys
    ----
    max_gap : float
    argmax : `SearchPoint`
    points_evaluated : int
    refinement_levels_used : int
    level_max_gaps : list of float
        Running maximum after each level.
    rectangle : dict
        The searched ranges of x1 and x2.
    tail : dict
        Result of the spot check beyond the window.
    verdict : {'BOUND_HOLDS_ON_GRID', 'COUNTEREXAMPLE', 'INCONCLUSIVE'}
    notes : list of str
    """


class LemmaReport(Result):
    """Outcome of `certify_lemma`.

    Keys
    ----
    config : dict
    alpha1, alpha2 : dict
        Name, claims and piece table of the inputs.
    hypotheses : list of `~kbound.CertResult`
    failed : list of `~kbound.CertResult`
    artifacts : `~kbound.ConstructionArtifacts` or None
    search : `SearchResult` or None
    verdict : {'CERTIFIED', 'HYPOTHESIS_FAILED', 'COUNTEREXAMPLE',
               'INCONCLUSIVE'}
    notes : list of str
    """


def _band_max(alpha1_vals, alpha2_vals, x1, x2, beta):
    """Max gap over a band of rows. Returns (gap, i, j, lhs, rhs) with the
    first maximum in row-major order."""
    lhs = alpha1_vals[:, None] + alpha2_vals[None, :]
    rhs = beta.evaluate(x1[:, None] + x2[None, :])
    gap = lhs - rhs
    k = int(np.argmax(gap))
    i, j = np.unravel_index(k, gap.shape)
    return float(gap[i, j]), int(i), int(j), float(lhs[i, j]), float(rhs[i, j])


def _grid_max(alpha1, alpha2, beta, x1, x2, nbands, executor):
    """Max gap over the grid x1 x x2 evaluated in row bands.

    The reduction keeps the first band holding the maximum, so the result
    is the first maximum in row-major order whatever the banding.
    """
    a1 = alpha1.evaluate(x1)
    a2 = alpha2.evaluate(x2)
    bands = [b for b in np.array_split(np.arange(len(x1)), nbands)
             if len(b) > 0]
    if executor is None:
        results = [_band_max(a1[b], a2, x1[b], x2, beta) for b in bands]
    else:
        futures = [executor.submit(_band_max, a1[b], a2, x1[b], x2, beta)
                   for b in bands]
        results = [f.result() for f in futures]

    best = None
    for b, (gap, i, j, lhs, rhs) in zip(bands, results):
        if best is None or gap > best.gap:
            i = int(b[i])
            best = SearchPoint(x1=float(x1[i]), x2=float(x2[j]),
                               u=float(x1[i] + x2[j]), lhs=lhs, rhs=rhs,
                               gap=gap)
    return best


def _rectangle(A, window):
    lo, hi = window
    if math.isinf(A):
        A_eff = min(-lo, hi)
    else:
        A_eff = float(A)
    if not A_eff > 0.:
        raise ValueError("A must be positive")
    return (-A_eff, hi), (0., min(A_eff, hi)), A_eff


def _zoom(center, span, bounds):
    lo = max(bounds[0], center - span / 2.)
    hi = min(bounds[1], center + span / 2.)
    return lo, hi


def _tail_check(alpha1, alpha2, beta, hi, x2max, tol):
    x1 = np.geomspace(hi, 100. * hi, TAIL_POINTS)
    x2 = [0., x2max / 2., x2max]
    checked = 0
    skipped = []
    violations = []
    max_gap = None
    with np.errstate(all='ignore'):
        for a in x1:
            for b in x2:
                try:
                    lhs = alpha1.evaluate(a) + alpha2.evaluate(b)
                    rhs = beta.evaluate(a + b)
                except (DomainError, FloatingPointError, OverflowError):
                    skipped.append((float(a), float(b)))
                    continue
                gap = lhs - rhs
                if not math.isfinite(gap):
                    skipped.append((float(a), float(b)))
                    continue
                checked += 1
                if max_gap is None or gap > max_gap:
                    max_gap = gap
                if gap > tol.threshold(rhs):
                    violations.append((float(a), float(b), gap))
    return Result(x1_range=[float(x1[0]), float(x1[-1])], x2=x2,
                  checked=checked, skipped=skipped, max_gap=max_gap,
                  violations=violations)


def search_counterexample(alpha1, alpha2, beta, A, window, n=None,
                          levels=None, tol=None, nbands=None,
                          max_threads=None, strict_tail=False):
    """Search for ``alpha1(x1) + alpha2(x2) > beta(x1 + x2)``.

    x1 ranges over [-A, window[1]] and x2 over [0, min(A, window[1])]; an
    infinite A is replaced by ``min(-window[0], window[1])``. Level 0
    evaluates an n x n grid of the whole rectangle; each further level
    evaluates an n x n grid of half the previous span around the best
    point so far, clipped to the rectangle.

    Parameters
    ----------
    alpha1, alpha2, beta : `~kbound.PiecewiseFn`
    A : float
    window : (float, float)
    n : int, optional
        Default is ``kbound.conf.grid``.
    levels : int, optional
        Total number of levels including level 0. Default is
        ``kbound.conf.levels``.
    tol : `~kbound.Tolerances`, optional
    nbands : int, optional
        Number of row bands. Default is the number of worker threads.
    max_threads : int, optional
        Worker threads. Default from `~kbound.utils.get_max_threads`.
    strict_tail : bool, optional
        Make the verdict INCONCLUSIVE when the tail spot check finds a
        violation.

    Returns
    -------
    result : `SearchResult`
        ``max_gap`` and ``argmax`` do not depend on ``nbands`` or the
        thread count; ties are resolved toward the smallest (x1, x2).

    Raises
    ------
    DomainError
        If a function cannot be evaluated on the rectangle.
    """
    from . import conf

    if tol is None:
        tol = Tolerances()
    n = conf.grid if n is None else int(n)
    levels = conf.levels if levels is None else int(levels)
    if n < 2:
        raise ValueError("grid size must be at least 2")
    if levels < 1:
        raise ValueError("levels must be at least 1")
    if max_threads is None:
        max_threads = get_max_threads()
    if nbands is None:
        nbands = max_threads
    nbands = max(1, min(int(nbands), n))

    r1, r2, A_eff = _rectangle(A, window)
    x1 = np.linspace(r1[0], r1[1], n)
    x2 = np.linspace(r2[0], r2[1], n)

    executor = None
    if max_threads > 1 and nbands > 1:
        executor = ThreadPoolExecutor(max_workers=max_threads)
    try:
        best = _grid_max(alpha1, alpha2, beta, x1, x2, nbands, executor)
        level_max = [best.gap]
        span1, span2 = r1[1] - r1[0], r2[1] - r2[0]
        for level in range(1, levels):
            span1, span2 = span1 / 2., span2 / 2.
            z1 = _zoom(best.x1, span1, r1)
            z2 = _zoom(best.x2, span2, r2)
            p = _grid_max(alpha1, alpha2, beta, np.linspace(z1[0], z1[1], n),
                          np.linspace(z2[0], z2[1], n), nbands, executor)
            if p.gap > best.gap:
                best = p
            level_max.append(best.gap)
    finally:
        if executor is not None:
            executor.shutdown()

    notes = []
    if best.gap > tol.threshold(best.rhs):
        verdict = COUNTEREXAMPLE
    else:
        verdict = BOUND_HOLDS_ON_GRID

    tail = _tail_check(alpha1, alpha2, beta, r1[1], r2[1], tol)
    if tail.violations:
        a, b, gap = tail.violations[0]
        message = ("bound fails beyond the window: gap {0!r} at x1 = {1!r},"
                   " x2 = {2!r}".format(gap, a, b))
        notes.append(message)
        warnings.warn(message, TailViolationWarning)
        if strict_tail and verdict != COUNTEREXAMPLE:
            verdict = INCONCLUSIVE
    if tail.skipped:
        notes.append("{0} tail points could not be evaluated"
                     .format(len(tail.skipped)))

    return SearchResult(
        max_gap=best.gap, argmax=best, points_evaluated=levels * n * n,
        refinement_levels_used=levels, level_max_gaps=level_max,
        rectangle={'x1': [r1[0], r1[1]], 'x2': [r2[0], r2[1]],
                   'A_eff': A_eff},
        tail=tail, verdict=verdict, notes=notes)


def search_samples(alpha1, alpha2, beta, A, window, n=None):
    """Level-0 samples of the search as arrays 'x1', 'x2' and 'gap' of
    shape (n, n), rows indexed by x1."""
    from . import conf

    n = conf.grid if n is None else int(n)
    r1, r2, _ = _rectangle(A, window)
    x1 = np.linspace(r1[0], r1[1], n)
    x2 = np.linspace(r2[0], r2[1], n)
    lhs = alpha1.evaluate(x1)[:, None] + alpha2.evaluate(x2)[None, :]
    gap = lhs - beta.evaluate(x1[:, None] + x2[None, :])
    X1, X2 = np.meshgrid(x1, x2, indexing='ij')
    return {'x1': X1, 'x2': X2, 'gap': gap}


def _spec_summary(spec):
    return {'name': spec.name, 'claims': sorted(spec.claims),
            'fn': spec.fn.describe()}


def certify_lemma(alpha1, alpha2, cfg, beta=None, max_threads=None):
    """Certify the hypotheses, build beta and search for counterexamples.

    Parameters
    ----------
    alpha1, alpha2 : `~kbound.FunctionSpec`
    cfg : `~kbound.LemmaConfig`
    beta : `~kbound.PiecewiseFn`, optional
        Search with this beta instead of the constructed one.
    max_threads : int, optional
        Worker threads of the search.

    Returns
    -------
    report : `LemmaReport`
        Verdict CERTIFIED only when every hypothesis is certified on the
        grid and the search finds no counterexample. Falsified hypotheses
        give HYPOTHESIS_FAILED and skip construction and search.

    Raises
    ------
    MajorantUnavailable
        Convex case only.
    """
    tol = cfg.tol
    lo, hi = cfg.window
    second = 'Convex' if cfg.lemma == CONVEX_CASE else 'Concave'
    notes = []
    for spec, needed in ((alpha1, {'ClassKe'}), (alpha2, {'ClassK', second})):
        missing = needed - set(spec.claims)
        if missing:
            notes.append("{0} does not claim {1}; checked anyway"
                         .format(spec.name, ', '.join(sorted(missing))))

    log.info('certifying hypotheses of {0} for {1}, {2}'
             .format(cfg.lemma, alpha1.name, alpha2.name))
    hypotheses = []
    hypotheses.extend(classify(alpha1.with_claims(['ClassKe']), cfg.window,
                               n=cfg.n, tol=tol, seed=cfg.seed))
    hypotheses.extend(classify(alpha2.with_claims(['ClassK', second]),
                               (0., hi), n=cfg.n, tol=tol, seed=cfg.seed))
    hypotheses.append(check_domination(alpha1.fn, alpha2.fn, cfg.A,
                                       n=cfg.n, tol=tol, window=cfg.window))

    report = LemmaReport(config=cfg.describe(),
                         alpha1=_spec_summary(alpha1),
                         alpha2=_spec_summary(alpha2),
                         hypotheses=hypotheses, failed=[], artifacts=None,
                         search=None, verdict=None, notes=notes)

    failed = [h for h in hypotheses if h.verdict == FALSIFIED]
    if failed:
        report['failed'] = failed
        report['verdict'] = HYPOTHESIS_FAILED
        log.info('hypothesis failed: {0}'
                 .format(', '.join(h.property for h in failed)))
        return report

    log.info('constructing beta')
    artifacts = build_artifacts(alpha1.fn, alpha2.fn, cfg, beta=beta)
    report['artifacts'] = artifacts

    log.info('searching for counterexamples on a {0}x{0} grid, {1} levels'
             .format(cfg.n, cfg.levels))
    search = search_counterexample(alpha1.fn, alpha2.fn, artifacts.beta,
                                   cfg.A, cfg.window, n=cfg.n,
                                   levels=cfg.levels, tol=tol,
                                   max_threads=max_threads,
                                   strict_tail=cfg.strict_tail)
    report['search'] = search

    if search.verdict == COUNTEREXAMPLE:
        verdict = COUNTEREXAMPLE
    elif (search.verdict == INCONCLUSIVE or
          worst_verdict(hypotheses) == INCONCLUSIVE):
        verdict = INCONCLUSIVE
    else:
        verdict = CERTIFIED
    report['verdict'] = verdict
    log.info('verdict {0}, max gap {1!r}'.format(verdict, search.max_gap))
    return report
