"""
The tight tail bound G(x, y, m) for martingales whose jumps are bounded by c,
its one-sided form, the union-bound corollary, the Azuma-Hoeffding bounds it is
compared with, and the piecewise linear envelope H_{n,m}(t) along x + y = n.

Thresholds x and y are counted in units of c.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import fractions
import logging
import math
import numbers
from collections import namedtuple

from cached_property import cached_property

from .config import resolve_exact_limit
from .config import series_tail_check_setting
from .const import FLOAT_TOLERANCE
from .const import MODE_AUTO
from .const import MODE_EXACT
from .const import MODE_FLOAT
from .const import MODES
from .errors import InvalidArgument
from .errors import ResourceLimitExceeded
from .exactnum import Dyadic
from .exactnum import ib
from .exactnum import ib_exact
from .exactnum import IbRow
from .exactnum import is_integer
from .exactnum import ONE
from .exactnum import ZERO


log = logging.getLogger(__name__)

INF = float('inf')


def is_real(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def check_counts(**values):
    for name, value in sorted(values.items()):
        if not is_integer(value) or value < 0:
            raise InvalidArgument(
                "{} must be a non-negative integer, got {!r}".format(name, value))


def _check_threshold(name, value):
    if value == INF:
        return
    check_counts(**{name: value})


def _check_mode(mode):
    if mode not in MODES:
        raise InvalidArgument("Unknown evaluation mode '{}'".format(mode))


class BoundQuery(namedtuple('_BoundQuery', 'x y m c')):

    @classmethod
    def create(cls, x, y, m, c=1.0):
        _check_threshold('x', x)
        _check_threshold('y', y)
        if x == INF and y == INF:
            raise InvalidArgument("At most one of the thresholds may be infinite")
        check_counts(m=m)
        if not is_real(c) or not c > 0 or math.isinf(c):
            raise InvalidArgument("The jump bound c must be a positive real, got {!r}".format(c))
        return cls(x, y, m, float(c))

    @property
    def one_sided(self):
        return self.x == INF or self.y == INF

    @property
    def finite_threshold(self):
        return self.y if self.x == INF else self.x

    @property
    def symmetric_threshold(self):
        return min(self.x, self.y)


BoundReport = namedtuple(
    'BoundReport',
    'tight tight_float corollary corollary_clamped azuma_one azuma_two azuma_two_clamped')


class EnvelopeQuery(namedtuple('_EnvelopeQuery', 'n m t')):

    @classmethod
    def create(cls, n, m, t):
        check_counts(n=n, m=m)
        if isinstance(t, Dyadic):
            return cls(n, m, t)
        if not is_real(t) or math.isinf(t) or math.isnan(t):
            raise InvalidArgument("t must be a finite real number, got {!r}".format(t))
        return cls(n, m, t)


def _closed_form_terms(x, y, m, first_block, last_block):
    """The signed I_b arguments of the closed form for blocks first_block..last_block.

    Every I_b term carries a factor 2 in the closed form; callers apply it once.
    """
    a = (m - x) // 2
    b = (m - y) // 2
    upper_trials = 2 * a + x + 2
    lower_trials = 2 * b + y + 2
    span = x + y
    for block in range(first_block, last_block + 1):
        shift = span * block
        yield 1, a - shift, upper_trials
        yield -1, a - y - shift, upper_trials
        yield 1, b - shift, lower_trials
        yield -1, b - x - shift, lower_trials


def _last_block(x, y, m):
    return m // (2 * (x + y))


def _exact_terms_sum(terms, rows):
    total = ZERO
    for sign, n, trials in terms:
        if n < 0:
            continue
        row = rows.get(trials)
        if row is None:
            row = rows[trials] = IbRow(trials)
        value = row.exact(n)
        total = total + value if sign > 0 else total - value
    return total


def g_closed(x, y, m, limit=None):
    check_counts(x=x, y=y, m=m)
    if x == 0 or y == 0:
        return ONE
    limit = resolve_exact_limit(limit)
    if m > limit:
        raise ResourceLimitExceeded('Exact evaluation of G with m', m, limit)

    rows = {}
    last = _last_block(x, y, m)
    total = _exact_terms_sum(_closed_form_terms(x, y, m, 0, last), rows)
    if series_tail_check_setting():
        tail = _exact_terms_sum(_closed_form_terms(x, y, m, last + 1, last + 1), rows)
        assert tail == ZERO, "Series block {} of G({}, {}, {}) is {}".format(
            last + 1, x, y, m, tail)
    return 2 * total


def g_one_sided(x, m):
    check_counts(x=x, m=m)
    if x == 0:
        return ONE
    a = (m - x) // 2
    return 2 * ib_exact(a, 2 * a + x + 2)


def g_one_sided_float(x, m, mode=MODE_AUTO, limit=None):
    check_counts(x=x, m=m)
    _check_mode(mode)
    if x == 0:
        return 1.0
    a = (m - x) // 2
    return min(1.0, 2.0 * ib(a, 2 * a + x + 2, mode=mode, limit=limit))


def g_float(x, y, m, mode=MODE_AUTO, limit=None):
    """G(x, y, m) as a float; either threshold may be INF for the one-sided bound."""
    _check_threshold('x', x)
    _check_threshold('y', y)
    check_counts(m=m)
    _check_mode(mode)
    if x == INF and y == INF:
        raise InvalidArgument("At most one of the thresholds may be infinite")
    if y == INF:
        return g_one_sided_float(x, m, mode=mode, limit=limit)
    if x == INF:
        return g_one_sided_float(y, m, mode=mode, limit=limit)
    if x == 0 or y == 0:
        return 1.0

    limit = resolve_exact_limit(limit)
    if mode != MODE_FLOAT and m <= limit:
        return float(g_closed(x, y, m, limit=limit))
    if mode == MODE_EXACT:
        raise ResourceLimitExceeded('Exact evaluation of G with m', m, limit)

    log.debug('G({}, {}, {}) evaluated in log space'.format(x, y, m))
    values = []
    for sign, n, trials in _closed_form_terms(x, y, m, 0, _last_block(x, y, m)):
        if n < 0:
            continue
        values.append(2.0 * sign * ib(n, trials, mode=MODE_FLOAT))
    return min(1.0, max(0.0, math.fsum(values)))


def corollary_bound(x, y, m):
    """The union bound G(x, INF, m) + G(INF, y, m); it may exceed 1."""
    check_counts(x=x, y=y, m=m)
    return g_one_sided(x, m) + g_one_sided(y, m)


def _check_azuma_args(x_abs, m, c):
    if not is_real(x_abs) or x_abs < 0:
        raise InvalidArgument("The threshold must be a non-negative real, got {!r}".format(x_abs))
    if not is_integer(m) or m < 1:
        raise InvalidArgument("The Azuma-Hoeffding bound needs m >= 1, got {!r}".format(m))
    if not is_real(c) or not c > 0:
        raise InvalidArgument("The jump bound c must be positive, got {!r}".format(c))


def azuma_one(x_abs, m, c=1.0):
    _check_azuma_args(x_abs, m, c)
    return math.exp(-float(x_abs) ** 2 / (2.0 * m * c * c))


def azuma_two(x_abs, m, c=1.0):
    return 2.0 * azuma_one(x_abs, m, c)


def _azuma_one_or_limit(x_abs, m, c):
    # with no steps the exponent diverges; keep the limiting value
    if m == 0:
        return 1.0 if x_abs == 0 else 0.0
    return azuma_one(x_abs, m, c)


def threshold_units(a, c=1.0):
    """Map a real threshold a to the conservative integer count floor(a / c)."""
    if not is_real(a) or a < 0:
        raise InvalidArgument("The threshold must be a non-negative real, got {!r}".format(a))
    if not is_real(c) or not c > 0:
        raise InvalidArgument("The jump bound c must be positive, got {!r}".format(c))
    if math.isinf(a):
        return INF
    return int(math.floor(a / c))


def bound_report(q, mode=MODE_AUTO, limit=None):
    _check_mode(mode)
    limit = resolve_exact_limit(limit)
    if mode == MODE_EXACT and q.m > limit:
        raise ResourceLimitExceeded('Exact evaluation of G with m', q.m, limit)
    exact = mode != MODE_FLOAT and q.m <= limit
    if not exact:
        log.debug('Bound report for {} without exact values'.format(q))

    if q.one_sided:
        threshold = q.finite_threshold
        tight = g_one_sided(threshold, q.m) if exact else None
        tight_float = float(tight) if exact else g_one_sided_float(threshold, q.m, MODE_FLOAT)
        corollary = tight
        corollary_float = tight_float
        azuma = _azuma_one_or_limit(threshold, q.m, q.c)
    else:
        if exact:
            tight = g_closed(q.x, q.y, q.m, limit=limit)
            corollary = corollary_bound(q.x, q.y, q.m)
            tight_float = float(tight)
            corollary_float = float(corollary)
        else:
            tight = corollary = None
            tight_float = g_float(q.x, q.y, q.m, mode=MODE_FLOAT)
            corollary_float = (
                g_one_sided_float(q.x, q.m, MODE_FLOAT) + g_one_sided_float(q.y, q.m, MODE_FLOAT))
        azuma = _azuma_one_or_limit(q.symmetric_threshold, q.m, q.c)

    return BoundReport(
        tight=tight,
        tight_float=tight_float,
        corollary=corollary,
        corollary_clamped=min(1.0, corollary_float),
        azuma_one=azuma,
        azuma_two=2.0 * azuma,
        azuma_two_clamped=min(1.0, 2.0 * azuma),
    )


def _as_dyadic(value):
    if isinstance(value, Dyadic):
        return value
    if is_integer(value):
        return Dyadic(value)
    if isinstance(value, float):
        return Dyadic.from_float(value)
    raise InvalidArgument("{!r} is not an exact dyadic position".format(value))


class Envelope(object):
    """H_{n,m}: linear interpolation of G(z, n - z, m) over t = 2z - n, and 1 for |t| >= n."""

    def __init__(self, n, m, limit=None):
        check_counts(n=n, m=m)
        self.n = n
        self.m = m
        self.limit = limit

    @cached_property
    def knots(self):
        return [g_closed(z, self.n - z, self.m, limit=self.limit) for z in range(self.n + 1)]

    @cached_property
    def float_knots(self):
        return [float(knot) for knot in self.knots]

    def value(self, t):
        t = float(t)
        if abs(t) >= self.n:
            return 1.0
        position = (self.n + t) / 2.0
        z = int(math.floor(position))
        weight = position - z
        knots = self.float_knots
        return min(1.0, (1.0 - weight) * knots[z] + weight * knots[z + 1])

    def exact(self, t):
        t = _as_dyadic(t)
        if abs(t) >= self.n:
            return ONE
        position = (t + self.n).half()
        z = position.floor()
        weight = position - z
        return (1 - weight) * self.knots[z] + weight * self.knots[z + 1]


def h_envelope(q):
    return Envelope(q.n, q.m).value(q.t)


def h_envelope_exact(q):
    return Envelope(q.n, q.m).exact(q.t)


def _as_fraction(value):
    if isinstance(value, Dyadic):
        return value.as_fraction()
    return fractions.Fraction(value)


def _check_step_distribution(z_dist):
    atoms = list(z_dist)
    if not atoms:
        raise InvalidArgument("The step distribution has no atoms")
    exact = True
    total = mean = fractions.Fraction(0)
    for atom, probability in atoms:
        if not is_real(atom) and not isinstance(atom, Dyadic):
            raise InvalidArgument("Step atom {!r} is not a real number".format(atom))
        z, p = _as_fraction(atom), _as_fraction(probability)
        if abs(z) > 1:
            raise InvalidArgument("Step atom {} lies outside [-1, 1]".format(atom))
        if p < 0:
            raise InvalidArgument("Step probability {} is negative".format(probability))
        exact = exact and not isinstance(atom, float) and not isinstance(probability, float)
        total += p
        mean += p * z
    slack = 0 if exact else FLOAT_TOLERANCE
    if abs(total - 1) > slack:
        raise InvalidArgument("Step probabilities sum to {} instead of 1".format(float(total)))
    if abs(mean) > slack:
        raise InvalidArgument("Step distribution has mean {} instead of 0".format(float(mean)))
    return atoms


def envelope_step_gap(n, m, t, z_dist):
    """H_{n,m}(t) - E[H_{n,m-1}(t - 2Z)], non-negative by the one-step envelope inequality."""
    if not is_integer(n) or n < 1 or not is_integer(m) or m < 1:
        raise InvalidArgument(
            "The envelope step needs n >= 1 and m >= 1, got n={!r}, m={!r}".format(n, m))
    atoms = _check_step_distribution(z_dist)
    t = float(t)
    before = Envelope(n, m - 1)
    expected = math.fsum(
        float(_as_fraction(p)) * before.value(t - 2.0 * float(_as_fraction(z)))
        for z, p in atoms
    )
    return Envelope(n, m).value(t) - expected


def envelope_step_check(n, m, t, z_dist, tolerance=FLOAT_TOLERANCE):
    return envelope_step_gap(n, m, t, z_dist) >= -tolerance
