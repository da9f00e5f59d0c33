from __future__ import absolute_import
from __future__ import print_function
from __future__ import unicode_literals

import functools
import logging
import re
import sys
from inspect import getdoc

from . import signals
from .. import __version__
from ..asymptotics import sweep
from ..config import ConfigurationError
from ..config import resolve_exact_limit
from ..config import Settings
from ..const import EXIT_DISAGREEMENT
from ..const import EXIT_IO
from ..const import EXIT_RESOURCE
from ..const import EXIT_USAGE
from ..const import MODE_EXACT
from ..const import MODE_FLOAT
from ..errors import InvalidArgument
from ..errors import OracleDisagreement
from ..errors import OutputError
from ..errors import ResourceLimitExceeded
from ..exactnum import Dyadic
from ..oracles import g_recurrence
from ..oracles import hitting_mass
from ..oracles import SimConfig
from ..oracles import simulate
from ..oracles import walk_distribution
from ..tightbound import bound_report
from ..tightbound import BoundQuery
from ..tightbound import Envelope
from ..tightbound import EnvelopeQuery
from ..tightbound import g_closed
from ..tightbound import g_float
from ..tightbound import g_one_sided
from ..tightbound import INF
from .docopt_command import DocoptDispatcher
from .docopt_command import get_handler
from .docopt_command import NoSuchCommand
from .errors import invalid_flag
from .errors import UserError
from .formatter import ConsoleWarningFormatter
from .formatter import Formatter
from .formatter import OutputEnvelope
from .formatter import sweep_csv
from .formatter import write_output
from .utils import get_version_info


log = logging.getLogger(__name__)
console_handler = logging.StreamHandler(sys.stderr)

FORMATS = ('json', 'csv', 'table')
ORACLE_METHODS = ('closed', 'recurrence', 'walk')


def main():
    signals.ignore_sigpipe()
    signals.set_signal_handler_to_shutdown()
    try:
        command = dispatch()
        command()
    except (KeyboardInterrupt, signals.ShutdownException):
        log.error("Aborting.")
        sys.exit(1)
    except (UserError, InvalidArgument, ConfigurationError) as e:
        log.error(e.msg)
        sys.exit(EXIT_USAGE)
    except OracleDisagreement as e:
        log.error(e.msg)
        sys.exit(EXIT_DISAGREEMENT)
    except ResourceLimitExceeded as e:
        log.error(e.msg)
        sys.exit(EXIT_RESOURCE)
    except OutputError as e:
        log.error(e.msg)
        sys.exit(EXIT_IO)
    except NoSuchCommand as e:
        commands = "\n".join(parse_doc_section("commands:", getdoc(e.supercommand)))
        log.error("No such command: %s\n\n%s", e.command, commands)
        sys.exit(EXIT_USAGE)


def dispatch():
    setup_logging()
    dispatcher = DocoptDispatcher(
        TopLevelCommand,
        {'options_first': True, 'version': get_version_info('martight')})

    options, handler, command_options = dispatcher.parse(sys.argv[1:])
    setup_console_handler(console_handler,
                          options.get('--verbose'),
                          options.get('--no-ansi'),
                          options.get("--log-level"))
    return functools.partial(perform_command, options, handler, command_options)


def perform_command(options, handler, command_options):
    if options['COMMAND'] in ('help', 'version'):
        handler(command_options)
        return

    log.debug('Using {}'.format(Settings.from_environment()))
    command = TopLevelCommand(options=options)
    handler(command, command_options)


def setup_logging():
    root_logger = logging.getLogger()
    root_logger.addHandler(console_handler)
    root_logger.setLevel(logging.DEBUG)


def setup_console_handler(handler, verbose, noansi=False, level=None):
    if handler.stream.isatty() and noansi is False:
        format_class = ConsoleWarningFormatter
    else:
        format_class = logging.Formatter

    if verbose:
        handler.setFormatter(format_class('%(name)s.%(funcName)s: %(message)s'))
        loglevel = logging.DEBUG
    else:
        handler.setFormatter(format_class())
        loglevel = logging.INFO

    if level is not None:
        levels = {
            'DEBUG': logging.DEBUG,
            'INFO': logging.INFO,
            'WARNING': logging.WARNING,
            'ERROR': logging.ERROR,
            'CRITICAL': logging.CRITICAL,
        }
        loglevel = levels.get(level.upper())
        if loglevel is None:
            raise UserError(
                'Invalid value for --log-level. Expected one of DEBUG, INFO, WARNING, ERROR, CRITICAL.'
            )

    handler.setLevel(loglevel)


# stolen from docopt master
def parse_doc_section(name, source):
    pattern = re.compile('^([^\n]*' + name + '[^\n]*\n?(?:[ \t].*?(?:\n|$))*)',
                         re.IGNORECASE | re.MULTILINE)
    return [s.strip() for s in pattern.findall(source)]


class TopLevelCommand(object):
    """Compute tight tail bounds for martingales with bounded jumps.

    Usage:
      martight [options] [COMMAND] [ARGS...]
      martight -h|--help

    Options:
      --verbose                   Show more output
      --log-level LEVEL           Set log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
      --no-ansi                   Do not print ANSI control characters
      -v, --version               Print version and exit

    Commands:
      bound              Report the tight, corollary and Azuma-Hoeffding bounds
      envelope           Evaluate the piecewise linear envelope H
      help               Get help on a command
      oracle             Cross-check G against the independent oracles
      simulate           Estimate G by simulating the extremal stopped walk
      sweep              Write the large-m limit curves as CSV
      version            Show version information
    """

    def __init__(self, options=None):
        self.toplevel_options = options or {}

    def bound(self, options):
        """
        Report G(x, y, m) with the union-bound corollary and the Azuma-Hoeffding
        bounds for the same thresholds. Thresholds count jumps of size c; pass
        `inf` for either one to get the one-sided bound.

        Usage: bound --x X --y Y --m M [options]

        Options:
            --x X               Upper threshold (integer or inf)
            --y Y               Lower threshold (integer or inf)
            --m M               Number of steps
            --c C               Jump bound [default: 1]
            --exact BOOL        Compute exact dyadic values (true, false) [default: true]
            --format FORMAT     Output format (json, csv, table) [default: json]
            --out PATH          Write to PATH instead of stdout
        """
        exact = boolean_from_opts(options, '--exact')
        q = BoundQuery.create(
            threshold_from_opts(options, '--x'),
            threshold_from_opts(options, '--y'),
            count_from_opts(options, '--m'),
            real_from_opts(options, '--c'),
        )
        report = bound_report(q, mode=MODE_EXACT if exact else MODE_FLOAT)
        self.emit(options, OutputEnvelope(
            query={'x': threshold_text(q.x), 'y': threshold_text(q.y), 'm': q.m, 'c': q.c},
            results=dict(report._asdict()),
            meta=meta(exact),
        ))

    def oracle(self, options):
        """
        Evaluate G(x, y, m) with the closed form, the recurrence and the stopped
        walk distribution, and check that the values agree exactly. Exits
        with status 1 when they do not.

        Usage: oracle --x X --y Y --m M [options]

        Options:
            --x X               Upper threshold
            --y Y               Lower threshold
            --m M               Number of steps
            --method METHOD     Oracle to run (recurrence, walk, closed, all) [default: all]
            --format FORMAT     Output format (json, csv, table) [default: json]
            --out PATH          Write to PATH instead of stdout
        """
        x = count_from_opts(options, '--x')
        y = count_from_opts(options, '--y')
        m = count_from_opts(options, '--m')
        method = options['--method']
        if method == 'all':
            methods = ORACLE_METHODS
        elif method in ORACLE_METHODS:
            methods = (method,)
        else:
            raise invalid_flag('--method', method, 'one of recurrence, walk, closed, all')

        values = {name: run_oracle(name, x, y, m) for name in methods}
        agree = len(set(values.values())) == 1
        results = dict(values, agree=agree)
        self.emit(options, OutputEnvelope(
            query={'x': x, 'y': y, 'm': m, 'method': method},
            results=results,
            meta=meta(True),
        ))
        if not agree:
            raise OracleDisagreement(values)

    def simulate(self, options):
        """
        Simulate the extremal stopped walk and compare the hitting frequency
        with G(x, y, m). With `--y inf` only the upper barrier is used.

        Usage: simulate --x X --y Y --m M [options]

        Options:
            --x X               Upper threshold
            --y Y               Lower threshold (integer or inf)
            --m M               Number of steps
            --trials N          Number of simulated walks [default: 100000]
            --seed SEED         Seed of the random stream [default: 0]
            --workers N         Number of worker threads
            --format FORMAT     Output format (json, csv, table) [default: json]
            --out PATH          Write to PATH instead of stdout
        """
        cfg = SimConfig.create(
            count_from_opts(options, '--x'),
            threshold_from_opts(options, '--y'),
            count_from_opts(options, '--m'),
            count_from_opts(options, '--trials'),
            count_from_opts(options, '--seed'),
        )
        result = simulate(cfg, workers=workers_from_opts(options))
        exact = exact_g(cfg.x, cfg.y, cfg.m)
        expected = float(exact) if exact is not None else g_float(cfg.x, cfg.y, cfg.m)
        results = dict(result._asdict())
        results.update(exact=exact, expected=expected, z_score=result.z_score(expected))
        self.emit(options, OutputEnvelope(
            query={
                'x': cfg.x, 'y': threshold_text(cfg.y), 'm': cfg.m,
                'trials': cfg.trials, 'seed': cfg.seed,
            },
            results=results,
            meta=meta(exact is not None, seed=cfg.seed),
        ))

    def envelope(self, options):
        """
        Evaluate the envelope H_{n,m}(t), the linear interpolation of
        G(z, n - z, m) over t = 2z - n, equal to 1 for |t| >= n.

        Usage: envelope --n N --m M --t T [options]

        Options:
            --n N               Sum of the thresholds x + y
            --m M               Number of steps
            --t T               Position on the anti-diagonal
            --format FORMAT     Output format (json, csv, table) [default: json]
            --out PATH          Write to PATH instead of stdout
        """
        q = EnvelopeQuery.create(
            count_from_opts(options, '--n'),
            count_from_opts(options, '--m'),
            real_from_opts(options, '--t', positive=False),
        )
        envelope = Envelope(q.n, q.m)
        exact = None
        if float(q.t).is_integer():
            exact = envelope.exact(Dyadic(int(q.t)))
        self.emit(options, OutputEnvelope(
            query={'n': q.n, 'm': q.m, 't': q.t},
            results={'value': envelope.value(q.t), 'exact': exact},
            meta=meta(exact is not None),
        ))

    def sweep(self, options):
        """
        Write the limit curves of the one- and two-sided bounds as functions
        of r = x / (c sqrt(m)) as CSV, one row per grid point.

        Usage: sweep --r-min R --r-max R --step S [options]

        Options:
            --r-min R           Smallest r
            --r-max R           Largest r
            --step S            Grid spacing
            --clamp BOOL        Clamp the values to [0, 1] (true, false) [default: true]
            --workers N         Number of worker threads
            --out PATH          Write to PATH instead of stdout
        """
        samples = sweep(
            real_from_opts(options, '--r-min', positive=False),
            real_from_opts(options, '--r-max', positive=False),
            real_from_opts(options, '--step', positive=False),
            workers=workers_from_opts(options),
        )
        write_output(
            sweep_csv(samples, clamp_values=boolean_from_opts(options, '--clamp')),
            options.get('--out'),
            sys.stdout,
        )

    @classmethod
    def help(cls, options):
        """
        Get help on a command.

        Usage: help [COMMAND]
        """
        if options['COMMAND']:
            subject = get_handler(cls, options['COMMAND'])
        else:
            subject = cls

        print(getdoc(subject))

    @classmethod
    def version(cls, options):
        """
        Show version information

        Usage: version [--short]

        Options:
            --short     Shows only the version number.
        """
        if options['--short']:
            print(__version__)
        else:
            print(get_version_info('full'))

    def emit(self, options, envelope):
        fmt = options.get('--format') or 'json'
        if fmt not in FORMATS:
            raise invalid_flag('--format', fmt, 'one of json, csv, table')
        write_output(Formatter.render(envelope, fmt), options.get('--out'), sys.stdout)


def meta(exact, seed=None):
    data = {'mode': MODE_EXACT if exact else MODE_FLOAT, 'version': __version__}
    if seed is not None:
        data['seed'] = seed
    return data


def run_oracle(name, x, y, m):
    if name == 'closed':
        return g_closed(x, y, m)
    if name == 'recurrence':
        return g_recurrence(x, y, m)
    return hitting_mass(walk_distribution(x, y, m))


def exact_g(x, y, m):
    if m > resolve_exact_limit():
        return None
    if y == INF:
        return g_one_sided(x, m)
    return g_closed(x, y, m)


def threshold_text(value):
    return 'inf' if value == INF else value


def count_from_opts(options, flag):
    value = options.get(flag)
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise invalid_flag(flag, value, 'a non-negative integer')
    if number < 0:
        raise invalid_flag(flag, value, 'a non-negative integer')
    return number


def threshold_from_opts(options, flag):
    if (options.get(flag) or '').strip().lower() == 'inf':
        return INF
    return count_from_opts(options, flag)


def real_from_opts(options, flag, positive=True):
    value = options.get(flag)
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise invalid_flag(flag, value, 'a real number')
    if number != number or number in (INF, -INF):
        raise invalid_flag(flag, value, 'a finite real number')
    if positive and not number > 0:
        raise invalid_flag(flag, value, 'a positive real number')
    return number


def boolean_from_opts(options, flag):
    value = (options.get(flag) or '').strip().lower()
    if value in ('true', '1', 'yes'):
        return True
    if value in ('false', '0', 'no'):
        return False
    raise invalid_flag(flag, options.get(flag), 'true or false')


def workers_from_opts(options):
    if options.get('--workers') is None:
        return None
    workers = count_from_opts(options, '--workers')
    if workers < 1:
        raise invalid_flag('--workers', options['--workers'], 'a positive integer')
    return workers
