"""
Large-m behaviour of the bounds with the threshold written as x = r * sqrt(m)
jumps: the complementary error function, the limiting curves of the Azuma,
tight, corollary and free random walk tails, and finite-m convergence probes.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import logging
import math
import numbers
from collections import namedtuple

from .const import MAX_SERIES_TERMS
from .const import MODE_AUTO
from .const import SERIES_TOLERANCE
from .errors import InvalidArgument
from .exactnum import is_integer
from .parallel import parallel_execute
from .tightbound import g_float
from .tightbound import g_one_sided_float


log = logging.getLogger(__name__)

SQRT_2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)

# the power series loses nothing to cancellation up to here
SERIES_CUTOFF = 2.0
MAX_FRACTION_TERMS = 2000
TINY = 1e-300


def _erf_series(z):
    # erf(z) = 2/sqrt(pi) exp(-z^2) sum_n 2^n z^(2n+1) / (1 * 3 * ... * (2n+1))
    term = total = z
    square = z * z
    n = 0
    while True:
        n += 1
        term *= 2.0 * square / (2 * n + 1)
        updated = total + term
        if updated == total:
            break
        total = updated
    return 2.0 / SQRT_PI * math.exp(-square) * total


def _erfc_continued_fraction(z):
    """exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), by modified Lentz."""
    f = c = z
    d = 0.0
    for k in range(1, MAX_FRACTION_TERMS + 1):
        a = k / 2.0
        d = z + a * d
        d = 1.0 / (d if d != 0.0 else TINY)
        c = z + a / c
        if c == 0.0:
            c = TINY
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-z * z) / SQRT_PI / f


def erfc(z):
    if not isinstance(z, numbers.Real) or math.isinf(z) or math.isnan(z):
        raise InvalidArgument("erfc needs a finite real argument, got {!r}".format(z))
    z = float(z)
    if z < 0:
        return 2.0 - erfc(-z)
    if z <= SERIES_CUTOFF:
        return 1.0 - _erf_series(z)
    return _erfc_continued_fraction(z)


def _check_r(r):
    if not isinstance(r, numbers.Real) or not r > 0 or math.isinf(r):
        raise InvalidArgument("r must be a positive finite real, got {!r}".format(r))


def azuma_one_limit(r):
    _check_r(r)
    return math.exp(-r * r / 2.0)


def azuma_two_limit(r):
    return 2.0 * azuma_one_limit(r)


def tight_one_limit(r):
    _check_r(r)
    return erfc(r / SQRT_2)


def tight_two_limit(r, tol=SERIES_TOLERANCE):
    """2 * sum_{k >= 0} (-1)**k erfc((2k + 1) r / sqrt(2)).

    The first term is always kept; the series stops before the first later
    term smaller than tol, which also bounds the truncation error.
    """
    _check_r(r)
    if not isinstance(tol, numbers.Real) or not tol > 0:
        raise InvalidArgument("tol must be positive, got {!r}".format(tol))
    total = 0.0
    for k in range(MAX_SERIES_TERMS):
        term = 2.0 * erfc((2 * k + 1) * r / SQRT_2)
        if k > 0 and term < tol:
            break
        total += -term if k % 2 else term
    else:
        log.warning('Two-sided limit at r={} truncated after {} terms'.format(r, MAX_SERIES_TERMS))
    return total


def corollary_two_limit(r):
    return 2.0 * tight_one_limit(r)


def random_walk_limits(r):
    one = tight_one_limit(r)
    return one / 2.0, one


AsymptoticSample = namedtuple(
    'AsymptoticSample',
    'r azuma_one azuma_two tight_one tight_two corollary_two rw_one rw_two')


def asymptotic_sample(r):
    rw_one, rw_two = random_walk_limits(r)
    return AsymptoticSample(
        r=r,
        azuma_one=azuma_one_limit(r),
        azuma_two=azuma_two_limit(r),
        tight_one=tight_one_limit(r),
        tight_two=tight_two_limit(r),
        corollary_two=corollary_two_limit(r),
        rw_one=rw_one,
        rw_two=rw_two,
    )


def sweep_grid(r_min, r_max, step):
    for name, value in (('r_min', r_min), ('r_max', r_max), ('step', step)):
        if not isinstance(value, numbers.Real) or math.isinf(value) or math.isnan(value):
            raise InvalidArgument("{} must be a finite real, got {!r}".format(name, value))
    if not 0 < r_min < r_max:
        raise InvalidArgument(
            "The sweep needs 0 < r_min < r_max, got r_min={}, r_max={}".format(r_min, r_max))
    if not step > 0:
        raise InvalidArgument("The sweep step must be positive, got {}".format(step))
    count = int(math.floor((r_max - r_min) / step + 1e-9)) + 1
    return [r_min + i * step for i in range(count)]


def sweep(r_min, r_max, step, workers=None):
    grid = sweep_grid(r_min, r_max, step)
    log.debug('Sweeping {} values of r'.format(len(grid)))
    return parallel_execute(grid, asymptotic_sample, workers=workers)


ConvergenceProbe = namedtuple('ConvergenceProbe', 'r m x finite_value limit_value gap')


def convergence_probe(r, m, two_sided=False, mode=MODE_AUTO, limit=None):
    _check_r(r)
    if not is_integer(m) or m < 4:
        raise InvalidArgument("The convergence probe needs an integer m >= 4, got {!r}".format(m))
    x = int(math.floor(r * math.sqrt(m)))
    if two_sided:
        finite_value = g_float(x, x, m, mode=mode, limit=limit)
        limit_value = tight_two_limit(r)
    else:
        finite_value = g_one_sided_float(x, m, mode=mode, limit=limit)
        limit_value = tight_one_limit(r)
    return ConvergenceProbe(
        r=r,
        m=m,
        x=x,
        finite_value=finite_value,
        limit_value=limit_value,
        gap=abs(finite_value - limit_value),
    )
