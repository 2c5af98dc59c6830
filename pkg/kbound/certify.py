# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Grid certification and falsification of function properties.

Every check evaluates a violation ``violating side - bounding side`` over a
finite sample set and compares it with the tolerance
``tol_abs + tol_rel * max(1, |bounding side|)``. A verdict of
``CERTIFIED_ON_GRID`` is evidence on the grid, never a proof.
"""

import math

import numpy as np

from .expr import DomainError
from .funcmodel import CLAIMS
from .utils import Result

__all__ = ['Tolerances', 'PropertyCheckRequest', 'CertResult',
           'check_property', 'check_domination', 'classify', 'worst_verdict',
           'PROPERTIES', 'ZERO_AT_ZERO', 'STRICTLY_INCREASING', 'NONNEGATIVE',
           'CONVEX', 'CONCAVE', 'SUPERADDITIVE', 'TRANSLATION_CONVEX',
           'TRANSLATION_CONCAVE', 'REFLECTION', 'DIFF_QUOTIENT_MONOTONE',
           'DOMINATION', 'DOMAIN_COVERAGE', 'CLASS_K', 'CLASS_KE',
           'ALL_PAIRS', 'ADJACENT', 'CERTIFIED_ON_GRID', 'FALSIFIED',
           'INCONCLUSIVE']

ZERO_AT_ZERO = 'ZERO_AT_ZERO'
STRICTLY_INCREASING = 'STRICTLY_INCREASING'
NONNEGATIVE = 'NONNEGATIVE'
CONVEX = 'CONVEX'
CONCAVE = 'CONCAVE'
SUPERADDITIVE = 'SUPERADDITIVE'
TRANSLATION_CONVEX = 'TRANSLATION_CONVEX'
TRANSLATION_CONCAVE = 'TRANSLATION_CONCAVE'
REFLECTION = 'REFLECTION'
DIFF_QUOTIENT_MONOTONE = 'DIFF_QUOTIENT_MONOTONE'

PROPERTIES = (ZERO_AT_ZERO, STRICTLY_INCREASING, NONNEGATIVE, CONVEX,
              CONCAVE, SUPERADDITIVE, TRANSLATION_CONVEX, TRANSLATION_CONCAVE,
              REFLECTION, DIFF_QUOTIENT_MONOTONE)

# Results that are not a single property of one function.
DOMINATION = 'DOMINATION'
DOMAIN_COVERAGE = 'DOMAIN_COVERAGE'
CLASS_K = 'CLASS_K'
CLASS_KE = 'CLASS_KE'

ALL_PAIRS = 'ALL_PAIRS'
ADJACENT = 'ADJACENT'

CERTIFIED_ON_GRID = 'CERTIFIED_ON_GRID'
FALSIFIED = 'FALSIFIED'
INCONCLUSIVE = 'INCONCLUSIVE'

_SEVERITY = {CERTIFIED_ON_GRID: 0, INCONCLUSIVE: 1, FALSIFIED: 2}

_CLAIM_RESULT_NAMES = {'ClassK': CLASS_K, 'ClassKe': CLASS_KE,
                       'Convex': CONVEX, 'Concave': CONCAVE}


class Tolerances(object):
    """Numerical tolerances of the certification checks.

    Parameters
    ----------
    tol_abs, tol_rel : float, optional
        A violation counts when it exceeds
        ``tol_abs + tol_rel * max(1, |bounding side|)``.
    tol_cont : float, optional
        Largest allowed jump at a breakpoint of a piecewise function.
    eps_strict : float, optional
        Minimum adjacent increment for a strict monotonicity check to be
        conclusive.

    Defaults are taken from `kbound.conf` when the instance is created.
    """

    def __init__(self, tol_abs=None, tol_rel=None, tol_cont=None,
                 eps_strict=None):
        from . import conf

        self.tol_abs = float(conf.tol_abs if tol_abs is None else tol_abs)
        self.tol_rel = float(conf.tol_rel if tol_rel is None else tol_rel)
        self.tol_cont = float(conf.tol_cont if tol_cont is None
                              else tol_cont)
        self.eps_strict = float(conf.eps_strict if eps_strict is None
                                else eps_strict)
        for name in ('tol_abs', 'tol_rel', 'tol_cont', 'eps_strict'):
            value = getattr(self, name)
            if not (value > 0. and math.isfinite(value)):
                raise ValueError("{0} must be positive and finite, got {1!r}"
                                 .format(name, value))

    def threshold(self, bound):
        """Tolerance a violation is compared against, per sample."""
        return self.tol_abs + self.tol_rel * np.maximum(1., np.abs(bound))

    def describe(self):
        return {'tol_abs': self.tol_abs, 'tol_rel': self.tol_rel,
                'tol_cont': self.tol_cont, 'eps_strict': self.eps_strict}

    def __repr__(self):
        return ('Tolerances(tol_abs={0!r}, tol_rel={1!r}, tol_cont={2!r}, '
                'eps_strict={3!r})'.format(self.tol_abs, self.tol_rel,
                                           self.tol_cont, self.eps_strict))


class PropertyCheckRequest(object):
    """What to check, and on which samples.

    Parameters
    ----------
    property : str
        One of `PROPERTIES`.
    window : (float, float)
        Finite interval; the grid is ``n`` evenly spaced points on it.
    n : int, optional
        Grid size, at least 3. Default is ``kbound.conf.grid``.
    sigma_samples : list of float, optional
        Convex combination weights for CONVEX and CONCAVE, in [0, 1].
        Default is [0.25, 0.5, 0.75].
    c_samples : list of float, optional
        Offsets of the translation checks: non-negative for
        TRANSLATION_CONVEX, non-positive for TRANSLATION_CONCAVE. Default
        is 0, 1/8, 1/4 and 1/2 of the window width (negated for the
        concave check).
    pair_strategy : {'ALL_PAIRS', 'ADJACENT'}, optional
        ALL_PAIRS uses every pair of grid points. ADJACENT uses neighbours,
        next neighbours and ``4 * n`` pairs drawn with ``seed``. Default is
        ALL_PAIRS up to ``kbound.conf.all_pairs_limit`` points.
    seed : int, optional
        Seed of the random pairs.
    """

    def __init__(self, property, window, n=None, sigma_samples=None,
                 c_samples=None, pair_strategy=None, seed=0):
        from . import conf

        if property not in PROPERTIES:
            raise ValueError("unknown property {0!r}".format(property))
        lo, hi = float(window[0]), float(window[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError("window must be a finite interval with lo < hi,"
                             " got [{0!r}, {1!r}]".format(lo, hi))
        n = conf.grid if n is None else int(n)
        if n < 3:
            raise ValueError("grid size must be at least 3, got {0}"
                             .format(n))

        if sigma_samples is None:
            sigma_samples = [0.25, 0.5, 0.75]
        sigma_samples = [float(s) for s in sigma_samples]
        if len(sigma_samples) == 0:
            raise ValueError("sigma_samples must not be empty")
        for s in sigma_samples:
            if not 0. <= s <= 1.:
                raise ValueError("sigma samples must lie in [0, 1], got {0!r}"
                                 .format(s))

        if c_samples is None:
            span = hi - lo
            c_samples = [0., span / 8., span / 4., span / 2.]
            if property == TRANSLATION_CONCAVE:
                c_samples = [0. - c for c in c_samples]
        c_samples = [float(c) for c in c_samples]
        if len(c_samples) == 0:
            raise ValueError("c_samples must not be empty")
        if property == TRANSLATION_CONVEX and any(c < 0. for c in c_samples):
            raise ValueError("TRANSLATION_CONVEX needs offsets c >= 0")
        if property == TRANSLATION_CONCAVE and any(c > 0. for c in c_samples):
            raise ValueError("TRANSLATION_CONCAVE needs offsets c <= 0")

        if pair_strategy is None:
            pair_strategy = (ALL_PAIRS if n <= conf.all_pairs_limit
                             else ADJACENT)
        if pair_strategy not in (ALL_PAIRS, ADJACENT):
            raise ValueError("unknown pair strategy {0!r}"
                             .format(pair_strategy))

        self.property = property
        self.window = (lo, hi)
        self.n = n
        self.sigma_samples = sigma_samples
        self.c_samples = c_samples
        self.pair_strategy = pair_strategy
        self.seed = int(seed)

    def grid(self):
        return np.linspace(self.window[0], self.window[1], self.n)

    def describe(self):
        return {'window': list(self.window), 'n': self.n, 'seed': self.seed,
                'sigma_samples': list(self.sigma_samples),
                'c_samples': list(self.c_samples),
                'pair_strategy': self.pair_strategy}


class CertResult(Result):
    """Outcome of one certification check.

    Keys
    ----
    property : str
    verdict : {'CERTIFIED_ON_GRID', 'FALSIFIED', 'INCONCLUSIVE'}
    max_violation : float or None
        Largest ``violating side - bounding side`` over the samples.
    argmax : tuple or None
        Sample attaining ``max_violation``.
    witness : list of tuple
        Non-empty iff the verdict is FALSIFIED: the falsifying sample with
        the largest violation, the first in grid order on ties.
    grid : dict
        Description of the sample set.
    reason : str or None
        Why the verdict is INCONCLUSIVE.
    min_increment : float or None
        Smallest adjacent increment (STRICTLY_INCREASING only).
    notes : list of str
    """


def _result(prop, verdict, max_violation=None, argmax=None, witness=None,
            grid=None, reason=None, min_increment=None, notes=None):
    return CertResult(property=prop, verdict=verdict,
                      max_violation=max_violation, argmax=argmax,
                      witness=[] if witness is None else witness,
                      grid={} if grid is None else grid, reason=reason,
                      min_increment=min_increment,
                      notes=[] if notes is None else notes)


def _inconclusive(prop, grid, reason):
    return _result(prop, INCONCLUSIVE, grid=grid, reason=reason)


def _sample(coords, i):
    return tuple(float(c[i]) for c in coords)


def _reduce(prop, violation, bound, coords, tol, grid):
    """Reduce per-sample violations to a CertResult."""
    violation = np.ravel(violation)
    bound = np.ravel(bound)
    coords = [np.ravel(c) for c in coords]
    if violation.size == 0:
        return _inconclusive(prop, grid, "no samples in the window")

    imax = int(np.argmax(violation))
    falsify = violation > tol.threshold(bound)
    if np.any(falsify):
        iw = int(np.argmax(np.where(falsify, violation, -np.inf)))
        verdict = FALSIFIED
        witness = [_sample(coords, iw)]
    else:
        verdict = CERTIFIED_ON_GRID
        witness = []
    return _result(prop, verdict, max_violation=float(violation[imax]),
                   argmax=_sample(coords, imax), witness=witness, grid=grid)


def _pairs(n, req, ordered=True):
    """Index arrays (i, j) of the grid pairs to check.

    With ``ordered=False`` only pairs with i < j are returned.
    """
    if req.pair_strategy == ALL_PAIRS:
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
        i, j = i.ravel(), j.ravel()
    else:
        k = np.arange(n)
        rand = np.random.RandomState(req.seed).randint(0, n, size=(4 * n, 2))
        i = np.concatenate([k[:-1], k[:-2], rand[:, 0]])
        j = np.concatenate([k[1:], k[2:], rand[:, 1]])
        if not ordered:
            i, j = np.minimum(i, j), np.maximum(i, j)
    if not ordered:
        keep = i < j
        i, j = i[keep], j[keep]
    return i, j


def _outside(f, *args):
    """Return the first argument value outside the domain of f, or None."""
    for a in args:
        a = np.ravel(a)
        bad = ~f.contains(a)
        if np.any(bad):
            return float(a[bad][0])
    return None


def _outside_reason(f, value):
    return ("shifted argument {0!r} outside domain [{1!r}, {2!r}]"
            .format(value, f.domain[0], f.domain[1]))


def _check_zero_at_zero(f, req, tol, grid):
    if not f.contains(0.):
        return _inconclusive(ZERO_AT_ZERO, grid, "0 outside domain")
    value = f.evaluate(0.)
    return _reduce(ZERO_AT_ZERO, [abs(value)], [0.], [[0.]], tol, grid)


def _check_increasing(f, x, fx, req, tol, grid):
    increments = fx[1:] - fx[:-1]
    result = _reduce(STRICTLY_INCREASING, fx[:-1] - fx[1:], fx[1:],
                     [x[:-1], x[1:]], tol, grid)
    min_increment = float(np.min(increments))
    result['min_increment'] = min_increment
    if result.verdict != FALSIFIED and min_increment < tol.eps_strict:
        result['verdict'] = INCONCLUSIVE
        result['reason'] = ("minimum adjacent increment {0!r} is below "
                            "eps_strict {1!r}".format(min_increment,
                                                      tol.eps_strict))
    return result


def _check_convexity(f, x, fx, req, tol, grid, concave):
    prop = CONCAVE if concave else CONVEX
    lo, hi = req.window
    i, j = _pairs(len(x), req)
    sigma = np.asarray(req.sigma_samples)[:, None]
    xi, xj = x[i][None, :], x[j][None, :]
    # midpoints are clipped so rounding cannot leave the window
    z = np.clip(sigma * xi + (1. - sigma) * xj, lo, hi)
    chord = sigma * fx[i][None, :] + (1. - sigma) * fx[j][None, :]
    fz = f.evaluate(z)
    if concave:
        violation, bound = chord - fz, fz
    else:
        violation, bound = fz - chord, chord
    shape = z.shape
    coords = [np.broadcast_to(xi, shape), np.broadcast_to(xj, shape),
              np.broadcast_to(sigma, shape)]
    return _reduce(prop, violation, bound, coords, tol, grid)


def _check_superadditive(f, x, fx, req, tol, grid):
    keep = x >= 0.
    xs, fs = x[keep], fx[keep]
    if len(xs) == 0:
        return _inconclusive(SUPERADDITIVE, grid,
                             "no grid points x >= 0 in the window")
    i, j = _pairs(len(xs), req)
    s = xs[i] + xs[j]
    bad = _outside(f, s)
    if bad is not None:
        return _inconclusive(SUPERADDITIVE, grid, _outside_reason(f, bad))
    fsum = f.evaluate(s)
    return _reduce(SUPERADDITIVE, (fs[i] + fs[j]) - fsum, fsum,
                   [xs[i], xs[j]], tol, grid)


def _check_translation(f, x, fx, req, tol, grid, prop):
    i, j = _pairs(len(x), req, ordered=False)
    c = np.asarray(req.c_samples)[:, None]
    xc = x[i][None, :] + c
    yc = x[j][None, :] + c
    bad = _outside(f, xc, yc)
    if bad is not None:
        return _inconclusive(prop, grid, _outside_reason(f, bad))
    shifted = f.evaluate(yc) - f.evaluate(xc)
    violation = (fx[j] - fx[i])[None, :] - shifted
    shape = xc.shape
    coords = [np.broadcast_to(x[i][None, :], shape),
              np.broadcast_to(x[j][None, :], shape),
              np.broadcast_to(c, shape)]
    return _reduce(prop, violation, shifted, coords, tol, grid)


def _check_reflection(f, x, fx, req, tol, grid):
    keep = x >= 0.
    xs, fs = x[keep], fx[keep]
    if len(xs) == 0:
        return _inconclusive(REFLECTION, grid,
                             "no grid points x >= 0 in the window")
    neg = -xs
    bad = _outside(f, neg)
    if bad is not None:
        return _inconclusive(REFLECTION, grid, _outside_reason(f, bad))
    fneg = f.evaluate(neg)
    return _reduce(REFLECTION, (-fs) - fneg, fneg, [xs], tol, grid)


def _check_diff_quotient(f, x, fx, req, tol, grid):
    # D[i, j] = (f(x_j) - f(x_i)) / (x_j - x_i); must not decrease along
    # either axis. The diagonal is undefined.
    with np.errstate(divide='ignore', invalid='ignore'):
        d = (fx[None, :] - fx[:, None]) / (x[None, :] - x[:, None])
    np.fill_diagonal(d, np.nan)
    n = len(x)
    xrow = np.broadcast_to(x[:, None], (n, n))
    xcol = np.broadcast_to(x[None, :], (n, n))

    # along the second argument
    v1 = d[:, :-1] - d[:, 1:]
    ok1 = np.isfinite(d[:, :-1]) & np.isfinite(d[:, 1:])
    c1 = [xrow[:, :-1], xcol[:, :-1], xrow[:, 1:], xcol[:, 1:]]

    # along the first argument
    v0 = d[:-1, :] - d[1:, :]
    ok0 = np.isfinite(d[:-1, :]) & np.isfinite(d[1:, :])
    c0 = [xrow[:-1, :], xcol[:-1, :], xrow[1:, :], xcol[1:, :]]

    violation = np.concatenate([v1[ok1], v0[ok0]])
    bound = np.concatenate([d[:, 1:][ok1], d[1:, :][ok0]])
    coords = [np.concatenate([a[ok1], b[ok0]]) for a, b in zip(c1, c0)]
    return _reduce(DIFF_QUOTIENT_MONOTONE, violation, bound, coords, tol,
                   grid)


def check_property(f, req, tol=None):
    """Certify or falsify one property of a function on a grid.

    Parameters
    ----------
    f : `~kbound.PiecewiseFn`
    req : `~kbound.PropertyCheckRequest`
    tol : `~kbound.Tolerances`, optional

    Returns
    -------
    result : `~kbound.CertResult`

    Raises
    ------
    DomainError
        If the window is not inside the domain of ``f`` or ``f`` cannot be
        evaluated at a sample point.

    Notes
    -----
    Violations, with ``z = sigma*x + (1-sigma)*y``:

    ============================ =========================================
    ZERO_AT_ZERO                 ``|f(0)|``
    STRICTLY_INCREASING          ``f(x_i) - f(x_i+1)`` for neighbours
    NONNEGATIVE                  ``-f(x)``
    CONVEX                       ``f(z) - (sigma*f(x) + (1-sigma)*f(y))``
    CONCAVE                      ``(sigma*f(x) + (1-sigma)*f(y)) - f(z)``
    SUPERADDITIVE                ``(f(x) + f(y)) - f(x+y)``, x, y >= 0
    TRANSLATION_CONVEX/CONCAVE   ``(f(y) - f(x)) - (f(y+c) - f(x+c))``,
                                 x < y
    REFLECTION                   ``-f(x) - f(-x)``, x >= 0
    DIFF_QUOTIENT_MONOTONE       ``D(x, y) - D(x', y')`` for neighbouring
                                 arguments, D the difference quotient
    ============================ =========================================

    Shifted arguments outside the domain of ``f`` make the result
    INCONCLUSIVE.
    """
    if tol is None:
        tol = Tolerances()
    grid = req.describe()
    prop = req.property

    if prop == ZERO_AT_ZERO:
        return _check_zero_at_zero(f, req, tol, grid)

    lo, hi = req.window
    if not f.covers(lo, hi):
        raise DomainError("window [{0!r}, {1!r}] outside domain [{2!r}, "
                          "{3!r}] of {4}".format(lo, hi, f.domain[0],
                                                 f.domain[1],
                                                 f.name or 'function'))
    x = req.grid()
    fx = f.evaluate(x)

    if prop == STRICTLY_INCREASING:
        return _check_increasing(f, x, fx, req, tol, grid)
    if prop == NONNEGATIVE:
        return _reduce(NONNEGATIVE, -fx, np.zeros_like(fx), [x], tol, grid)
    if prop in (CONVEX, CONCAVE):
        return _check_convexity(f, x, fx, req, tol, grid, prop == CONCAVE)
    if prop == SUPERADDITIVE:
        return _check_superadditive(f, x, fx, req, tol, grid)
    if prop in (TRANSLATION_CONVEX, TRANSLATION_CONCAVE):
        return _check_translation(f, x, fx, req, tol, grid, prop)
    if prop == REFLECTION:
        return _check_reflection(f, x, fx, req, tol, grid)
    return _check_diff_quotient(f, x, fx, req, tol, grid)


def _effective_bound(A, window):
    if math.isinf(A):
        if window is None:
            raise ValueError("A = inf needs a finite surrogate window")
        A_eff = min(-window[0], window[1])
        if not A_eff > 0.:
            raise ValueError("surrogate window must contain 0 in its "
                             "interior")
        return A_eff
    if not A > 0.:
        raise ValueError("A must be positive, got {0!r}".format(A))
    return float(A)


def check_domination(alpha1, alpha2, A, n=None, tol=None, window=None):
    """Check ``alpha1(-x) <= -alpha2(x)`` on an n point grid of [0, A].

    Parameters
    ----------
    alpha1, alpha2 : `~kbound.PiecewiseFn`
    A : float
        Positive; ``inf`` is replaced by the surrogate
        ``min(-window[0], window[1])``.
    n : int, optional
        Default is ``kbound.conf.grid``.
    tol : `~kbound.Tolerances`, optional
    window : (float, float), optional
        Required when A is infinite.

    Returns
    -------
    result : `~kbound.CertResult`
        Property 'DOMINATION', violation ``alpha1(-x) + alpha2(x)``,
        samples ``(x,)``.
    """
    from . import conf

    if tol is None:
        tol = Tolerances()
    n = conf.grid if n is None else int(n)
    if n < 2:
        raise ValueError("grid size must be at least 2")
    A_eff = _effective_bound(A, window)
    if not alpha1.covers(-A_eff, 0.):
        raise DomainError("[-A, 0] = [{0!r}, 0] outside domain of {1}"
                          .format(-A_eff, alpha1.name or 'alpha1'))
    if not alpha2.covers(0., A_eff):
        raise DomainError("[0, A] = [0, {0!r}] outside domain of {1}"
                          .format(A_eff, alpha2.name or 'alpha2'))

    x = np.linspace(0., A_eff, n)
    a2 = alpha2.evaluate(x)
    violation = alpha1.evaluate(-x) + a2
    grid = {'window': [0., A_eff], 'n': n, 'A': float(A)}
    return _reduce(DOMINATION, violation, -a2, [x], tol, grid)


def worst_verdict(results):
    """Most severe verdict of several results: FALSIFIED over INCONCLUSIVE
    over CERTIFIED_ON_GRID."""
    verdict = CERTIFIED_ON_GRID
    for r in results:
        if _SEVERITY[r['verdict']] > _SEVERITY[verdict]:
            verdict = r['verdict']
    return verdict


def _coverage(f, lo, hi):
    dlo, dhi = f.domain
    grid = {'window': [lo, hi]}
    if dlo > lo:
        return _result(DOMAIN_COVERAGE, FALSIFIED, max_violation=dlo - lo,
                       argmax=(lo,), witness=[(lo,)], grid=grid)
    if dhi < hi:
        return _result(DOMAIN_COVERAGE, FALSIFIED, max_violation=hi - dhi,
                       argmax=(hi,), witness=[(hi,)], grid=grid)
    return _result(DOMAIN_COVERAGE, CERTIFIED_ON_GRID, max_violation=0.,
                   argmax=(lo,), grid=grid)


def _aggregate(name, components, grid):
    verdict = worst_verdict(components)
    failed = None
    for c in components:
        if c.verdict == FALSIFIED:
            failed = c
            break
    if failed is not None:
        best = failed
    else:
        best = None
        for c in components:
            if c.max_violation is None:
                continue
            if best is None or c.max_violation > best.max_violation:
                best = c
    reason = None
    for c in components:
        if c.verdict == INCONCLUSIVE:
            reason = '{0}: {1}'.format(c.property, c.reason)
            break
    result = _result(name, verdict,
                     max_violation=None if best is None
                     else best.max_violation,
                     argmax=None if best is None else best.argmax,
                     witness=[] if failed is None else failed.witness,
                     grid=grid, reason=reason)
    result['failed_property'] = None if failed is None else failed.property
    result['components'] = components
    return result


def classify(spec, window, n=None, tol=None, seed=0):
    """Certify the claims of a function on a grid.

    Parameters
    ----------
    spec : `~kbound.FunctionSpec`
        Its ``claims`` select the checks; they must not be empty.
    window : (float, float)
    n : int, optional
        Grid size. Default is ``kbound.conf.grid``.
    tol : `~kbound.Tolerances`, optional
    seed : int, optional

    Returns
    -------
    results : list of `~kbound.CertResult`
        One per claim, in the order ClassK, ClassKe, Convex, Concave, with
        properties CLASS_K, CLASS_KE, CONVEX and CONCAVE. Each lists its
        sub-checks under ``components``; ``failed_property`` names the
        first falsified one.

    Notes
    -----
    - ClassK: domain covers [0, window[1]], f(0) = 0, strictly increasing
      and nonnegative on [0, window[1]].
    - ClassKe: domain covers the window, f(0) = 0, strictly increasing on
      the window.
    - Convex, Concave: checked on the window intersected with the domain.
    """
    if tol is None:
        tol = Tolerances()
    if not spec.claims:
        raise ValueError("{0} has no claims to classify".format(spec.name))
    f = spec.fn
    lo, hi = float(window[0]), float(window[1])

    def request(prop, w):
        return PropertyCheckRequest(prop, w, n=n, seed=seed)

    results = []
    for claim in CLAIMS:
        if claim not in spec.claims:
            continue
        name = _CLAIM_RESULT_NAMES[claim]

        if claim in ('ClassK', 'ClassKe'):
            if claim == 'ClassK':
                if not hi > 0.:
                    raise ValueError("ClassK needs a window reaching above "
                                     "0, got [{0!r}, {1!r}]".format(lo, hi))
                w = (0., hi)
            else:
                w = (lo, hi)
            components = [_coverage(f, w[0], w[1])]
            if components[0].verdict != FALSIFIED:
                components.append(check_property(
                    f, request(ZERO_AT_ZERO, w), tol))
                components.append(check_property(
                    f, request(STRICTLY_INCREASING, w), tol))
                if claim == 'ClassK':
                    components.append(check_property(
                        f, request(NONNEGATIVE, w), tol))
            grid = {'window': [w[0], w[1]], 'n': components[-1].grid.get(
                'n')}
        else:
            w = (max(lo, f.domain[0]), min(hi, f.domain[1]))
            if not w[0] < w[1]:
                components = [_inconclusive(
                    name, {'window': [lo, hi]},
                    "window does not intersect the domain")]
            else:
                components = [check_property(f, request(name, w), tol)]
            grid = components[0].grid
        results.append(_aggregate(name, components, grid))
    return results
