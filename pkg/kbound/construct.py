# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Construction of the bounding function beta.

For the convex case the second function is extended by a linear piece
below 0 and by a shifted copy of a linear majorant of the first function
above A; beta is that extension shifted by A. For the concave case the
extension is linear below 0 and beta is the extension plus the first
function on [0, inf). Every identity the construction relies on is kept
exact by reusing the same function objects through
`~kbound.CompositeRef` and `~kbound.SumRef`.
"""

import math
import warnings

import numpy as np
from astropy import log
from astropy.utils.exceptions import AstropyUserWarning

from .expr import BinOp, Constant, Variable, DomainError
from .funcmodel import (PiecewiseFn, FunctionSpec, CompositeRef, SumRef,
                        Piece, compose_shift)
from .certify import (Tolerances, PropertyCheckRequest, check_property,
                      classify, STRICTLY_INCREASING, FALSIFIED,
                      CERTIFIED_ON_GRID)
from .utils import Result

__all__ = ['LemmaConfig', 'ConstructionArtifacts', 'MajorantUnavailable',
           'SlopeClampWarning', 'ConstructionSlackWarning',
           'build_convex_majorant', 'majorant_slack',
           'build_convex_left_extension', 'build_alpha2_ext_convex',
           'build_beta_convex', 'build_concave_left_extension',
           'build_alpha2_ext_concave', 'build_beta_concave',
           'build_artifacts', 'CONVEX_CASE', 'CONCAVE_CASE']

CONVEX_CASE = 'CONVEX_CASE'
CONCAVE_CASE = 'CONCAVE_CASE'


class MajorantUnavailable(Exception):
    """Raised when no linear convex class K majorant of the first function
    exists on the window, or a supplied majorant fails certification."""
    pass


class SlopeClampWarning(AstropyUserWarning):
    """The slope of a left extension was clamped to ``s_max``."""
    pass


class ConstructionSlackWarning(AstropyUserWarning):
    """A measured construction slack exceeds the absolute tolerance."""
    pass


class LemmaConfig(object):
    """Settings of one lemma certification.

    Parameters
    ----------
    lemma : {'CONVEX_CASE', 'CONCAVE_CASE'}
    A : float
        Positive bound of the second argument. Must be finite for the
        convex case; ``inf`` is allowed for the concave case and is then
        replaced by ``min(-window[0], window[1])`` where a finite value is
        needed.
    window : (float, float)
        Finite verification window; must contain [-A, A] when A is finite
        and 0 in its interior otherwise.
    n : int, optional
        Grid size. Default is ``kbound.conf.grid``.
    levels : int, optional
        Refinement levels of the counterexample search. Default is
        ``kbound.conf.levels``.
    s_min : float, optional
        Smallest slope of the convex left extension.
    s_max : float, optional
        Largest slope of the concave left extension.
    majorant_margin : float, optional
        Relative margin of the linear majorant slope.
    x_floor : float, optional
        Smallest x of the majorant slope grid. Default is
        ``window[1] * 1e-9``.
    tol : `~kbound.Tolerances`, optional
    seed : int, optional
        Seed of randomized pair selection in the certification checks.
    majorant : `~kbound.PiecewiseFn`, optional
        User supplied majorant of the first function (convex case).
    strict_tail : bool, optional
        Treat violations found by the tail spot check as inconclusive.
    """

    def __init__(self, lemma, A, window, n=None, levels=None, s_min=1.e-6,
                 s_max=1.e6, majorant_margin=0.01, x_floor=None, tol=None,
                 seed=0, majorant=None, strict_tail=False):
        from . import conf

        if lemma not in (CONVEX_CASE, CONCAVE_CASE):
            raise ValueError("lemma must be {0!r} or {1!r}, got {2!r}"
                             .format(CONVEX_CASE, CONCAVE_CASE, lemma))
        A = float(A)
        if math.isnan(A) or not A > 0.:
            raise ValueError("A must be positive, got {0!r}".format(A))
        if lemma == CONVEX_CASE and math.isinf(A):
            raise ValueError("the convex case needs a finite A")

        lo, hi = float(window[0]), float(window[1])
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError("window must be a finite interval, got "
                             "[{0!r}, {1!r}]".format(lo, hi))
        if math.isinf(A):
            if not lo < 0. < hi:
                raise ValueError("window must contain 0 in its interior")
        elif not (lo <= -A and A <= hi):
            raise ValueError("window [{0!r}, {1!r}] must contain [-A, A] = "
                             "[{2!r}, {3!r}]".format(lo, hi, -A, A))

        n = conf.grid if n is None else int(n)
        if n < 3:
            raise ValueError("grid size must be at least 3")
        levels = conf.levels if levels is None else int(levels)
        if levels < 1:
            raise ValueError("levels must be at least 1")
        if not 0. < s_min <= s_max:
            raise ValueError("need 0 < s_min <= s_max")
        if not majorant_margin >= 0.:
            raise ValueError("majorant_margin must be non-negative")
        if x_floor is None:
            x_floor = hi * 1.e-9
        if not 0. < x_floor < hi:
            raise ValueError("x_floor must lie in (0, window[1])")

        self.lemma = lemma
        self.A = A
        self.window = (lo, hi)
        self.n = n
        self.levels = levels
        self.s_min = float(s_min)
        self.s_max = float(s_max)
        self.majorant_margin = float(majorant_margin)
        self.x_floor = float(x_floor)
        self.tol = Tolerances() if tol is None else tol
        self.seed = int(seed)
        self.majorant = majorant
        self.strict_tail = bool(strict_tail)

    @property
    def A_eff(self):
        """A, or its finite surrogate ``min(-window[0], window[1])``."""
        if math.isinf(self.A):
            return min(-self.window[0], self.window[1])
        return self.A

    def describe(self):
        return {'lemma': self.lemma, 'A': self.A, 'A_eff': self.A_eff,
                'window': list(self.window), 'n': self.n,
                'levels': self.levels, 's_min': self.s_min,
                's_max': self.s_max,
                'majorant_margin': self.majorant_margin,
                'x_floor': self.x_floor, 'tolerances': self.tol.describe(),
                'seed': self.seed,
                'majorant': (None if self.majorant is None
                             else self.majorant.describe()),
                'strict_tail': self.strict_tail}


class ConstructionArtifacts(Result):
    """The constructed functions and their diagnostics.

    Keys
    ----
    lemma : str
    alpha1_majorant : `~kbound.PiecewiseFn` or None
    alpha2_ext : `~kbound.PiecewiseFn`
    beta : `~kbound.PiecewiseFn`
    left_slope : float
    majorant_slope : float or None
    junction_slack : float
    majorant_slack : float
    diagnostics : dict
        Breakpoint jumps, exactness flags, beta at and just left of 0 and
        the monotonicity check of beta.
    notes : list of str
    """


def _linear(slope, lo, hi, name):
    body = BinOp('*', Constant(slope), Variable())
    return PiecewiseFn([(lo, hi, body)], name=name)


def _note(notes, message, category):
    notes.append(message)
    warnings.warn(message, category)


def majorant_slack(alpha1, majorant, hi, n):
    """Largest deficiency ``max(0, alpha1(x) - majorant(x))`` over an n
    point grid of [0, hi]."""
    x = np.linspace(0., hi, n)
    deficiency = alpha1.evaluate(x) - majorant.evaluate(x)
    return max(0., float(np.max(deficiency)))


def _check_majorant_override(alpha1, majorant, hi, cfg):
    if majorant.domain[0] > 0. or not math.isinf(majorant.domain[1]):
        raise MajorantUnavailable("supplied majorant must be defined on "
                                  "[0, inf)")
    spec = FunctionSpec(majorant.name or 'majorant', majorant,
                        ['ClassK', 'Convex'])
    for result in classify(spec, (0., hi), n=cfg.n, tol=cfg.tol,
                           seed=cfg.seed):
        if result.verdict != CERTIFIED_ON_GRID:
            raise MajorantUnavailable(
                "supplied majorant is not certified {0}: {1}"
                .format(result.property, result.verdict))
    slack = majorant_slack(alpha1, majorant, hi, cfg.n)
    if slack > cfg.tol.tol_abs:
        raise MajorantUnavailable("supplied majorant is below the first "
                                  "function by {0!r}".format(slack))
    return majorant


def build_convex_majorant(alpha1, window, cfg):
    """Linear convex class K majorant ``x -> L*x`` of alpha1 on [0, hi].

    ``L = (1 + majorant_margin) * max(alpha1(x) / x)`` over n points of
    ``[x_floor, window[1]]``. A majorant supplied in ``cfg.majorant`` is
    returned instead once it certifies ClassK, Convex and dominance.

    Parameters
    ----------
    alpha1 : `~kbound.PiecewiseFn`
    window : (float, float)
        Only the upper bound is used.
    cfg : `~kbound.LemmaConfig`

    Returns
    -------
    majorant : `~kbound.PiecewiseFn`
        Defined on [0, inf).

    Raises
    ------
    MajorantUnavailable
        If the slope ratio peaks at ``x_floor`` and keeps growing when
        ``x_floor`` is refined twice by 10, which means alpha1 has
        unbounded slope at 0, or if ``L`` is not positive.
    """
    hi = float(window[1])
    if not hi > 0.:
        raise ValueError("window must reach above 0")
    if not alpha1.covers(0., hi):
        raise DomainError("[0, {0!r}] outside domain of {1}"
                          .format(hi, alpha1.name or 'alpha1'))
    if cfg.majorant is not None:
        return _check_majorant_override(alpha1, cfg.majorant, hi, cfg)

    x = np.linspace(cfg.x_floor, hi, cfg.n)
    ratio = alpha1.evaluate(x) / x
    imax = int(np.argmax(ratio))
    rmax = float(ratio[imax])
    if imax == 0:
        r1 = alpha1.evaluate(cfg.x_floor / 10.) / (cfg.x_floor / 10.)
        r2 = alpha1.evaluate(cfg.x_floor / 100.) / (cfg.x_floor / 100.)
        if (r1 - rmax > 1.e-3 * abs(rmax) and
                r2 - r1 > 1.e-3 * abs(r1)):
            raise MajorantUnavailable(
                "{0} has unbounded slope at 0: alpha1(x)/x grows from "
                "{1!r} to {2!r} to {3!r} as x shrinks from {4!r}; no "
                "convex class K majorant exists on a window containing 0"
                .format(alpha1.name or 'alpha1', rmax, r1, r2, cfg.x_floor))
    L = (1. + cfg.majorant_margin) * rmax
    if not (L > 0. and math.isfinite(L)):
        raise MajorantUnavailable("majorant slope {0!r} is not positive"
                                  .format(L))
    return _linear(L, 0., math.inf, 'alpha1_majorant')


def build_convex_left_extension(alpha2, cfg):
    """Linear extension ``x -> s*x`` of a convex alpha2 below 0.

    ``s = max(s_min, (alpha2(h) - alpha2(0)) / h)`` with ``h = A * 1e-6``.
    A flat origin forces ``s = s_min``, which breaks convexity of the
    joined function near 0; the damage is measured as the junction slack
    ``max(0, s*x - alpha2(x))`` over n points of ``[0, min(s, A)]``.

    Returns
    -------
    left : `~kbound.PiecewiseFn`
        Defined on (-inf, 0].
    s : float
    junction_slack : float
    """
    A = cfg.A
    h = A * 1.e-6
    s = max(cfg.s_min, (alpha2.evaluate(h) - alpha2.evaluate(0.)) / h)
    left = _linear(s, -math.inf, 0., 'alpha2_left')
    x = np.linspace(0., min(s, A), cfg.n)
    slack = max(0., float(np.max(s * x - alpha2.evaluate(x))))
    return left, s, slack


def _clip_pieces(fn, lo, hi):
    """Pieces of fn restricted to [lo, hi), bodies shared."""
    pieces = []
    for p in fn.pieces:
        plo, phi = max(p.lo, lo), min(p.hi, hi)
        if plo < phi:
            pieces.append(Piece(plo, phi, p.body))
    return pieces


def build_alpha2_ext_convex(alpha2, alpha1_majorant, left, A):
    """Extension of a convex alpha2 to the real line.

    Three parts: ``left`` on (-inf, 0), alpha2's own pieces on [0, A) and
    ``alpha2(A) + alpha1_majorant(x - A)`` on [A, inf), with ``alpha2(A)``
    evaluated once. ``alpha1_majorant(x)`` then equals
    ``alpha2_ext(x + A) - alpha2(A)`` wherever ``(x + A) - A == x``.

    Returns
    -------
    alpha2_ext : `~kbound.PiecewiseFn`
    """
    if not alpha2.covers(0., A):
        raise DomainError("[0, A] = [0, {0!r}] outside domain of {1}"
                          .format(A, alpha2.name or 'alpha2'))
    a2A = alpha2.evaluate(A)
    tail = compose_shift(alpha1_majorant, -A, a2A)
    pieces = ([Piece(-math.inf, 0., left.pieces[0].body)] +
              _clip_pieces(alpha2, 0., A) +
              [Piece(A, math.inf, tail.pieces[0].body)])
    return PiecewiseFn(pieces, name='alpha2_ext')


def build_beta_convex(alpha2_ext, A):
    """``u -> alpha2_ext(u)`` on (-inf, 0) and
    ``u -> alpha2_ext(u + A) - alpha2_ext(A)`` on [0, inf).

    The offset is evaluated once, so beta(0) is exactly 0.
    """
    if math.isinf(A):
        raise ValueError("build_beta_convex needs a finite A")
    offset = -alpha2_ext.evaluate(A)
    return PiecewiseFn([(-math.inf, 0., CompositeRef(alpha2_ext, 0., 0.)),
                        (0., math.inf,
                         CompositeRef(alpha2_ext, A, offset))],
                       name='beta')


def _forward_slope(alpha2, h):
    return (alpha2.evaluate(h) - alpha2.evaluate(0.)) / h


def _concave_junction_slack(joined, hi, n):
    """Largest midpoint concavity violation of ``joined`` over pairs
    (-a, b), a and b from a linear and a geometric grid on (0, hi]."""
    ab = np.union1d(np.linspace(0., hi, n),
                    np.geomspace(hi * 1.e-16, hi, n))
    a, b = ab[:, None], ab[None, :]
    mid = (b - a) / 2.
    chord = (joined.evaluate(-ab)[:, None] + joined.evaluate(ab)[None, :]) / 2.
    violation = chord - joined.evaluate(mid)
    return max(0., float(np.max(violation)))


def build_concave_left_extension(alpha2, cfg):
    """Linear extension ``x -> s*x`` of a concave alpha2 below 0.

    ``s`` is the forward difference slope at ``h = window[1] * 1e-6``,
    capped at ``s_max``. When two successive 10x refinements of ``h`` each
    raise the slope by more than 10% the slope is taken as unbounded
    (sqrt-like growth) and set to ``s_max``. A clamped slope emits a
    `SlopeClampWarning`.

    Returns
    -------
    left : `~kbound.PiecewiseFn`
        Defined on (-inf, 0].
    s : float
    junction_slack : float
        Largest midpoint concavity violation of the joined function across
        0.
    """
    hi = cfg.window[1]
    h = hi * 1.e-6
    d0 = _forward_slope(alpha2, h)
    d1 = _forward_slope(alpha2, h / 10.)
    d2 = _forward_slope(alpha2, h / 100.)
    unbounded = d1 > 1.1 * d0 and d2 > 1.1 * d1
    if unbounded:
        s = cfg.s_max
    else:
        s = min(cfg.s_max, max(cfg.s_min, d0))
    if s >= cfg.s_max:
        warnings.warn("left slope of {0} clamped to s_max = {1!r}"
                      .format(alpha2.name or 'alpha2', cfg.s_max),
                      SlopeClampWarning)
    left = _linear(s, -math.inf, 0., 'alpha2_left')
    joined = build_alpha2_ext_concave(alpha2, left)
    slack = _concave_junction_slack(joined, hi, cfg.n)
    return left, s, slack


def build_alpha2_ext_concave(alpha2, left):
    """``left`` on (-inf, 0) joined with alpha2's own pieces on [0, inf)."""
    if not (alpha2.contains(0.) and alpha2.domain[1] > 0.):
        raise DomainError("domain of {0} must contain [0, x] for some x > 0"
                          .format(alpha2.name or 'alpha2'))
    pieces = ([Piece(-math.inf, 0., left.pieces[0].body)] +
              _clip_pieces(alpha2, 0., alpha2.domain[1]))
    return PiecewiseFn(pieces, name='alpha2_ext')


def build_beta_concave(alpha1, alpha2_ext):
    """``u -> alpha2_ext(u)`` on (-inf, 0) and
    ``u -> alpha1(u) + alpha2_ext(u)`` on [0, hi).

    beta does not depend on A.
    """
    hi = min(alpha1.domain[1], alpha2_ext.domain[1])
    if not alpha1.covers(0., hi) or not hi > 0.:
        raise DomainError("{0} must be defined on [0, {1!r}]"
                          .format(alpha1.name or 'alpha1', hi))
    return PiecewiseFn([(-math.inf, 0., CompositeRef(alpha2_ext, 0., 0.)),
                        (0., hi, SumRef([alpha1, alpha2_ext]))],
                       name='beta')


def _jumps(fn):
    return [{'at': b, 'jump': jump} for b, jump in fn.breakpoint_jumps()]


def build_artifacts(alpha1, alpha2, cfg, beta=None):
    """Run the construction of the configured case and measure it.

    Parameters
    ----------
    alpha1, alpha2 : `~kbound.PiecewiseFn`
    cfg : `~kbound.LemmaConfig`
    beta : `~kbound.PiecewiseFn`, optional
        Use this beta instead of the constructed one. The extension is
        still built and measured.

    Returns
    -------
    artifacts : `~kbound.ConstructionArtifacts`

    Raises
    ------
    MajorantUnavailable
        Convex case only.
    """
    tol = cfg.tol
    hi = cfg.window[1]
    A = cfg.A_eff
    notes = []
    majorant = None
    majorant_slope = None
    major_slack = 0.

    if cfg.lemma == CONVEX_CASE:
        log.info('building linear majorant of {0}'
                 .format(alpha1.name or 'alpha1'))
        majorant = build_convex_majorant(alpha1, cfg.window, cfg)
        body = majorant.pieces[0].body
        if isinstance(body, BinOp) and isinstance(body.left, Constant):
            majorant_slope = body.left.value
        major_slack = majorant_slack(alpha1, majorant, hi, cfg.n)
        if major_slack > tol.tol_abs:
            _note(notes, "majorant is below alpha1 by {0!r} on [0, {1!r}]"
                  .format(major_slack, hi), ConstructionSlackWarning)
        left, s, junction_slack = build_convex_left_extension(alpha2, cfg)
        alpha2_ext = build_alpha2_ext_convex(alpha2, majorant, left, A)
        built_beta = build_beta_convex(alpha2_ext, A)
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', SlopeClampWarning)
            left, s, junction_slack = build_concave_left_extension(alpha2,
                                                                   cfg)
        for w in caught:
            _note(notes, str(w.message), w.category)
        alpha2_ext = build_alpha2_ext_concave(alpha2, left)
        built_beta = build_beta_concave(alpha1, alpha2_ext)
    log.info('left slope {0!r}, junction slack {1!r}'
             .format(s, junction_slack))

    if junction_slack > tol.tol_abs:
        _note(notes, "junction slack {0!r} exceeds tol_abs {1!r}"
              .format(junction_slack, tol.tol_abs), ConstructionSlackWarning)

    if beta is None:
        beta = built_beta
    else:
        notes.append("beta supplied by the caller: {0}"
                     .format(beta.name or 'beta'))

    diagnostics = Result()
    diagnostics['alpha2_ext_jumps'] = _jumps(alpha2_ext)
    diagnostics['beta_jumps'] = _jumps(beta)
    for key in ('alpha2_ext_jumps', 'beta_jumps'):
        for item in diagnostics[key]:
            if item['jump'] > tol.tol_cont:
                notes.append("{0}: jump {1!r} at {2!r} exceeds tol_cont"
                             .format(key, item['jump'], item['at']))

    # alpha2_ext must reproduce alpha2 exactly on [0, A)
    x = np.linspace(0., min(A, alpha2.domain[1]), cfg.n)
    x = x[x < A]
    diagnostics['alpha2_exact'] = bool(np.array_equal(
        alpha2_ext.evaluate(x), alpha2.evaluate(x)))

    if majorant is not None:
        x = np.linspace(0., hi, cfg.n)
        x = x[(x + A) - A == x]
        a2A = alpha2.evaluate(A)
        diagnostics['majorant_identity_points'] = int(len(x))
        diagnostics['majorant_identity_exact'] = bool(np.array_equal(
            alpha2_ext.evaluate(x + A), majorant.evaluate(x) + a2A))
    else:
        diagnostics['majorant_identity_points'] = 0
        diagnostics['majorant_identity_exact'] = None

    beta_zero = beta.evaluate(0.)
    beta_left = beta.evaluate(-1.e-12)
    diagnostics['beta_at_zero'] = beta_zero
    diagnostics['beta_left_of_zero'] = beta_left
    if beta_zero != 0.:
        notes.append("beta(0) = {0!r} is not 0".format(beta_zero))
    if abs(beta_left) > tol.tol_cont:
        notes.append("|beta(-1e-12)| = {0!r} exceeds tol_cont"
                     .format(abs(beta_left)))

    u_window = (-A, hi + min(A, hi))
    if beta.covers(*u_window):
        monotone = check_property(
            beta, PropertyCheckRequest(STRICTLY_INCREASING, u_window,
                                       n=cfg.n, seed=cfg.seed), tol)
        if monotone.verdict == FALSIFIED:
            notes.append("beta decreases on the grid near {0!r}"
                         .format(monotone.witness[0]))
    else:
        monotone = None
        notes.append("beta is not defined on the sum range [{0!r}, {1!r}]"
                     .format(u_window[0], u_window[1]))
    diagnostics['beta_monotone'] = monotone

    return ConstructionArtifacts(
        lemma=cfg.lemma, A=cfg.A, alpha1_majorant=majorant,
        alpha2_ext=alpha2_ext, beta=beta, left_slope=s,
        majorant_slope=majorant_slope, junction_slack=junction_slack,
        majorant_slack=major_slack, diagnostics=diagnostics, notes=notes)
