# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""The ``kbound`` command line tool.

Subcommands::

    kbound check --input FILE [--function NAME ...] [--window LO:HI]
    kbound construct --alpha1 NAME --alpha2 NAME [--lemma convex|concave]
                     [--A A] [--window LO:HI] [--csv PATH]
    kbound verify --alpha1 NAME --alpha2 NAME [--lemma convex|concave]
                  [--A A] [--window LO:HI] [--levels K] [--csv PATH]

Names are looked up in ``--input`` first, then in the built-in catalog.
Negative window bounds need the ``--window=-1:5`` form.

Exit status: 0 all certified, 1 falsified (counterexample, failed
hypothesis), 2 inconclusive, 3 no majorant, 64 usage error, 65 malformed
input, 74 I/O error.
"""

import argparse
from collections import OrderedDict
import logging
import math
import os
import sys

from astropy import log

from .expr import ParseError, DomainError
from .funcmodel import get_function
from .io import (FunctionFileError, read_functions, write_json,
                 write_function_csv, write_search_csv)
from .certify import (Tolerances, classify, worst_verdict, CERTIFIED_ON_GRID,
                      FALSIFIED, INCONCLUSIVE)
from .construct import (LemmaConfig, MajorantUnavailable, build_artifacts,
                        CONVEX_CASE, CONCAVE_CASE)
from .verify import (certify_lemma, search_samples, CERTIFIED,
                     COUNTEREXAMPLE, HYPOTHESIS_FAILED)
from .utils import Result, format_violation, parse_bound, parse_window

__all__ = ['RunConfig', 'UsageError', 'main', 'cmd_check', 'cmd_construct',
           'cmd_verify', 'build_parser']

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INCONCLUSIVE = 2
EXIT_NO_MAJORANT = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_IOERR = 74

_CHECK_STATUS = {CERTIFIED_ON_GRID: EXIT_OK, FALSIFIED: EXIT_FALSIFIED,
                 INCONCLUSIVE: EXIT_INCONCLUSIVE}
_VERIFY_STATUS = {CERTIFIED: EXIT_OK, COUNTEREXAMPLE: EXIT_FALSIFIED,
                  HYPOTHESIS_FAILED: EXIT_FALSIFIED,
                  INCONCLUSIVE: EXIT_INCONCLUSIVE}
_LEMMAS = {'convex': CONVEX_CASE, 'concave': CONCAVE_CASE}


class UsageError(Exception):
    """Inconsistent or incomplete command line arguments."""
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Exit with status 64 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{0}: error: {1}\n'.format(self.prog, message))


class RunConfig(object):
    """Settings of one command line run.

    Parameters mirror the command line flags; None means "not given".
    """

    def __init__(self, subcommand, input=None, functions=None, alpha1=None,
                 alpha2=None, lemma=None, A=None, window=None, grid=None,
                 levels=None, seed=0, report=None, csv=None, tol_abs=None,
                 tol_rel=None, beta_from_file=None, majorant=None,
                 strict_tail=False):
        self.subcommand = subcommand
        self.input = input
        self.functions = functions
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.lemma = lemma
        self.A = A
        self.window = window
        self.grid = grid
        self.levels = levels
        self.seed = seed
        self.report = report
        self.csv = csv
        self.tol_abs = tol_abs
        self.tol_rel = tol_rel
        self.beta_from_file = beta_from_file
        self.majorant = majorant
        self.strict_tail = strict_tail

    @classmethod
    def from_args(cls, args):
        """Create from an `argparse.Namespace`."""
        kwargs = {}
        for key in ('input', 'functions', 'alpha1', 'alpha2', 'lemma', 'A',
                    'window', 'grid', 'levels', 'seed', 'report', 'csv',
                    'tol_abs', 'tol_rel', 'beta_from_file', 'majorant',
                    'strict_tail'):
            if hasattr(args, key):
                kwargs[key] = getattr(args, key)
        return cls(args.subcommand, **kwargs)

    def get_window(self):
        from . import conf

        if self.window is not None:
            return self.window
        return parse_window(conf.window)

    def tolerances(self):
        return Tolerances(tol_abs=self.tol_abs, tol_rel=self.tol_rel)


def _load_input(cfg):
    if cfg.input is None:
        return OrderedDict()
    return read_functions(cfg.input)


def _resolve(name, functions):
    if name in functions:
        return functions[name]
    try:
        return get_function(name)
    except KeyError:
        raise UsageError("unknown function {0!r}: not in the input file or "
                         "the built-in catalog".format(name))


def _write_report(report, cfg):
    if cfg.report is None:
        write_json(report, sys.stdout)
    else:
        write_json(report, cfg.report)


def _summary(name, result, tol):
    line = '{0} {1}: {2}'.format(name, result.property, result.verdict)
    if result.max_violation is not None:
        line += ' (max violation {0})'.format(
            format_violation(result.max_violation, tol.tol_abs))
    if result.witness:
        line += ' witness {0}'.format(result.witness[0])
    return line


def _select_lemma(cfg, alpha2, window, tol):
    if cfg.lemma is not None:
        return _LEMMAS[cfg.lemma]
    for claim, lemma in (('Convex', CONVEX_CASE), ('Concave', CONCAVE_CASE)):
        result = classify(alpha2.with_claims([claim]), (0., window[1]),
                          n=cfg.grid, tol=tol, seed=cfg.seed)[0]
        if result.verdict == CERTIFIED_ON_GRID:
            log.info('{0} certifies {1}: using {2}'
                     .format(alpha2.name, claim, lemma))
            return lemma
    raise UsageError("{0} certifies neither Convex nor Concave on [0, {1!r}]"
                     "; choose --lemma".format(alpha2.name, window[1]))


def _lemma_config(cfg, alpha2, functions):
    window = cfg.get_window()
    tol = cfg.tolerances()
    lemma = _select_lemma(cfg, alpha2, window, tol)
    A = cfg.A
    if A is None:
        if lemma == CONVEX_CASE:
            raise UsageError("--A is required for the convex case")
        A = math.inf
    majorant = None
    if cfg.majorant is not None:
        majorant = _resolve(cfg.majorant, functions).fn
    try:
        return LemmaConfig(lemma, A, window, n=cfg.grid, levels=cfg.levels,
                           tol=tol, seed=cfg.seed, majorant=majorant,
                           strict_tail=cfg.strict_tail)
    except ValueError as e:
        raise UsageError(str(e))


def _csv_stem(path):
    return os.path.splitext(path)[0]


def cmd_check(cfg):
    """Certify the claims of functions.

    Returns
    -------
    status : int
        0 if every claim is certified on the grid, 1 if any is falsified,
        2 if any is inconclusive.
    report : `~kbound.utils.Result`
    """
    from . import conf

    functions = _load_input(cfg)
    names = cfg.functions if cfg.functions else list(functions)
    if not names:
        raise UsageError("nothing to check: give --input or --function")
    window = cfg.get_window()
    tol = cfg.tolerances()

    entries = []
    results = []
    for name in names:
        spec = _resolve(name, functions)
        if not spec.claims:
            log.warning('{0} has no claims'.format(name))
            entries.append({'name': spec.name, 'claims': [],
                            'results': []})
            continue
        res = classify(spec, window, n=cfg.grid, tol=tol, seed=cfg.seed)
        for r in res:
            log.info(_summary(spec.name, r, tol))
        entries.append({'name': spec.name, 'claims': sorted(spec.claims),
                        'results': res})
        results.extend(res)

    verdict = worst_verdict(results)
    report = Result(command='check', window=list(window),
                    n=conf.grid if cfg.grid is None else cfg.grid,
                    tolerances=tol.describe(), verdict=verdict,
                    functions=entries)
    _write_report(report, cfg)
    return _CHECK_STATUS[verdict], report


def cmd_construct(cfg):
    """Build alpha1's majorant, the extension of alpha2 and beta.

    Returns
    -------
    status : int
        0 on success.
    report : `~kbound.utils.Result`
    """
    functions = _load_input(cfg)
    alpha1 = _resolve(cfg.alpha1, functions)
    alpha2 = _resolve(cfg.alpha2, functions)
    lcfg = _lemma_config(cfg, alpha2, functions)

    artifacts = build_artifacts(alpha1.fn, alpha2.fn, lcfg)
    for note in artifacts.notes:
        log.info(note)
    report = Result(command='construct', config=lcfg.describe(),
                    alpha1=alpha1.name, alpha2=alpha2.name,
                    artifacts=artifacts)

    if cfg.csv is not None:
        stem = _csv_stem(cfg.csv)
        write_function_csv(artifacts.alpha2_ext, lcfg.window, lcfg.n,
                           stem + '.alpha2_ext.csv')
        write_function_csv(artifacts.beta, lcfg.window, lcfg.n,
                           stem + '.beta.csv')
    _write_report(report, cfg)
    return EXIT_OK, report


def cmd_verify(cfg):
    """Run the full lemma certification.

    Returns
    -------
    status : int
        0 if CERTIFIED, 1 on COUNTEREXAMPLE or HYPOTHESIS_FAILED, 2 if
        INCONCLUSIVE.
    report : `~kbound.LemmaReport`
    """
    functions = _load_input(cfg)
    alpha1 = _resolve(cfg.alpha1, functions)
    alpha2 = _resolve(cfg.alpha2, functions)
    lcfg = _lemma_config(cfg, alpha2, functions)

    beta = None
    if cfg.beta_from_file is not None:
        betas = read_functions(cfg.beta_from_file)
        if not betas:
            raise UsageError("{0} defines no function"
                             .format(cfg.beta_from_file))
        spec = betas['beta'] if 'beta' in betas else next(iter(betas.values()))
        beta = spec.fn
        log.warning('using beta {0!r} from {1}'
                    .format(spec.name, cfg.beta_from_file))

    report = certify_lemma(alpha1, alpha2, lcfg, beta=beta)
    report['command'] = 'verify'
    for h in report.hypotheses:
        log.info(_summary('hypothesis', h, lcfg.tol))

    if cfg.csv is not None:
        if report.artifacts is None:
            log.warning('no beta was built; {0} not written'.format(cfg.csv))
        else:
            write_search_csv(search_samples(alpha1.fn, alpha2.fn,
                                            report.artifacts.beta, lcfg.A,
                                            lcfg.window, n=lcfg.n),
                             cfg.csv)
    _write_report(report, cfg)
    return _VERIFY_STATUS[report.verdict], report


COMMANDS = {'check': cmd_check, 'construct': cmd_construct,
            'verify': cmd_verify}


def _add_common(p):
    from . import conf

    p.add_argument('--input', metavar='FILE',
                   help='function definition file')
    p.add_argument('--window', type=parse_window, metavar='LO:HI',
                   help='verification window (default {0})'
                   .format(conf.window))
    p.add_argument('--grid', type=int, default=None, metavar='N',
                   help='grid points per axis (default {0})'
                   .format(conf.grid))
    p.add_argument('--seed', type=int, default=0, metavar='S')
    p.add_argument('--report', metavar='PATH',
                   help='write the JSON report here instead of stdout')
    p.add_argument('--tol-abs', type=float, default=None, dest='tol_abs')
    p.add_argument('--tol-rel', type=float, default=None, dest='tol_rel')


def _add_lemma(p):
    p.add_argument('--alpha1', required=True, metavar='NAME')
    p.add_argument('--alpha2', required=True, metavar='NAME')
    p.add_argument('--lemma', choices=sorted(_LEMMAS),
                   help='default: convex if alpha2 certifies Convex, else '
                   'concave if it certifies Concave')
    p.add_argument('--A', type=parse_bound, dest='A', metavar='A',
                   help="bound of x2, a number or 'inf' (concave only)")
    p.add_argument('--majorant', metavar='NAME',
                   help='use this function as the majorant of alpha1')
    p.add_argument('--csv', metavar='PATH')


def build_parser():
    parser = _ArgumentParser(
        prog='kbound',
        description='Certify comparison function bounds on a grid.')
    sub = parser.add_subparsers(dest='subcommand', metavar='COMMAND')

    p = sub.add_parser('check', help='certify the claims of functions')
    _add_common(p)
    p.add_argument('--function', action='append', dest='functions',
                   metavar='NAME', help='function to check (repeatable; '
                   'default all functions of --input)')

    p = sub.add_parser('construct', help='build the bounding function')
    _add_common(p)
    _add_lemma(p)

    p = sub.add_parser('verify', help='certify a lemma end to end')
    _add_common(p)
    _add_lemma(p)
    p.add_argument('--levels', type=int, default=None, metavar='K')
    p.add_argument('--strict-tail', action='store_true', dest='strict_tail',
                   help='treat violations beyond the window as inconclusive')
    p.add_argument('--beta-from-file', metavar='PATH', dest='beta_from_file',
                   help='search with the function "beta" of PATH (debug)')
    return parser


def main(argv=None):
    """Run the command line tool and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    cfg = RunConfig.from_args(args)
    # astropy's handler prints INFO records on stdout, which must hold
    # nothing but the report when --report is not given.
    level = log.level
    if cfg.report is None and log.getEffectiveLevel() < logging.WARNING:
        log.setLevel('WARNING')
    try:
        status, _ = COMMANDS[cfg.subcommand](cfg)
    except UsageError as e:
        log.error(str(e))
        return EXIT_USAGE
    except (ParseError, FunctionFileError, DomainError) as e:
        log.error(str(e))
        return EXIT_DATAERR
    except MajorantUnavailable as e:
        log.error(str(e))
        return EXIT_NO_MAJORANT
    except OSError as e:
        log.error(str(e))
        return EXIT_IOERR
    except ValueError as e:
        log.error(str(e))
        return EXIT_USAGE
    finally:
        log.setLevel(level)
    return status


if __name__ == '__main__':
    sys.exit(main())
