"""
Exact dyadic arithmetic and the parity-filtered binomial sum I_b.

I_b(n, m) = sum over 0 <= z <= n with z = n (mod 2) of 2 * C(m, z) / 2**m.
Every value it takes is a dyadic rational, so the exact path never rounds.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import fractions
import functools
import logging
import math
import re
from collections import namedtuple

import six
from cached_property import cached_property

from .config import resolve_exact_limit
from .const import MODE_AUTO
from .const import MODE_EXACT
from .const import MODE_FLOAT
from .const import MODES
from .errors import InvalidArgument
from .errors import ResourceLimitExceeded


log = logging.getLogger(__name__)

DYADIC_TEXT = re.compile(r'^\s*(?P<numerator>[+-]?\d+)\s*/\s*2\^(?P<exponent>\d+)\s*$')

# relative size below which a further I_b term cannot change the float sum
NEGLIGIBLE_TERM = 1e-17

LOG_2 = math.log(2.0)
LOG_2PI = math.log(2.0 * math.pi)

# coefficients of the asymptotic expansion of the Stirling remainder
STIRLING_SERIES = (1.0 / 12, 1.0 / 360, 1.0 / 1260, 1.0 / 1680, 1.0 / 1188)


def is_integer(value):
    return isinstance(value, six.integer_types) and not isinstance(value, bool)


def _trailing_zeros(value):
    return (value & -value).bit_length() - 1


@functools.total_ordering
class Dyadic(object):
    """An exact number numerator / 2**exponent.

    The representation is canonical: the numerator is odd, or zero with a zero
    exponent. Instances are immutable and safe to share between threads.
    """

    __slots__ = ('_numerator', '_exponent')

    def __init__(self, numerator=0, exponent=0):
        if not is_integer(numerator) or not is_integer(exponent):
            raise InvalidArgument(
                "Dyadic parts must be integers, got {!r} and {!r}".format(numerator, exponent))
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        else:
            shift = min(_trailing_zeros(numerator), exponent)
            numerator >>= shift
            exponent -= shift
        self._numerator = numerator
        self._exponent = exponent

    @classmethod
    def from_float(cls, value):
        if math.isinf(value) or math.isnan(value):
            raise InvalidArgument("{!r} has no dyadic representation".format(value))
        numerator, denominator = float(value).as_integer_ratio()
        return cls(numerator, denominator.bit_length() - 1)

    @classmethod
    def parse(cls, text):
        match = DYADIC_TEXT.match(text)
        if match is None:
            raise InvalidArgument(
                "'{}' is not of the form 'p/2^k'".format(text))
        return cls(int(match.group('numerator')), int(match.group('exponent')))

    @property
    def numerator(self):
        return self._numerator

    @property
    def exponent(self):
        return self._exponent

    @property
    def denominator(self):
        return 1 << self._exponent

    def half(self):
        return Dyadic(self._numerator, self._exponent + 1)

    def floor(self):
        return self._numerator >> self._exponent

    def to_text(self):
        return '{}/2^{}'.format(self._numerator, self._exponent)

    def to_decimal(self):
        """Exact decimal expansion; it always terminates for a dyadic."""
        if self._exponent == 0:
            return six.text_type(self._numerator)
        digits = six.text_type(abs(self._numerator) * 5 ** self._exponent)
        digits = digits.rjust(self._exponent + 1, '0')
        sign = '-' if self._numerator < 0 else ''
        return '{}{}.{}'.format(sign, digits[:-self._exponent], digits[-self._exponent:])

    def as_fraction(self):
        return fractions.Fraction(self._numerator, self.denominator)

    def _align(self, other):
        exponent = max(self._exponent, other._exponent)
        return (
            self._numerator << (exponent - self._exponent),
            other._numerator << (exponent - other._exponent),
            exponent,
        )

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        left, right, exponent = self._align(other)
        return Dyadic(left + right, exponent)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        left, right, exponent = self._align(other)
        return Dyadic(left - right, exponent)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self._numerator * other._numerator, self._exponent + other._exponent)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self._numerator, self._exponent)

    def __abs__(self):
        return Dyadic(abs(self._numerator), self._exponent)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._numerator == other._numerator and self._exponent == other._exponent

    def __ne__(self, other):
        return not self == other

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        left, right, _ = self._align(other)
        return left < right

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self._numerator != 0

    __nonzero__ = __bool__

    def __float__(self):
        # int true division is correctly rounded for arbitrarily large operands
        return self._numerator / self.denominator

    def __repr__(self):
        return "Dyadic('{}')".format(self.to_text())

    __str__ = to_text


def _coerce(value):
    if isinstance(value, Dyadic):
        return value
    if is_integer(value):
        return Dyadic(value)
    if isinstance(value, float) and not (math.isinf(value) or math.isnan(value)):
        return Dyadic.from_float(value)
    return NotImplemented


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


class IbArgs(namedtuple('_IbArgs', 'n m')):

    @classmethod
    def create(cls, n, m):
        if not is_integer(n) or not is_integer(m):
            raise InvalidArgument(
                "I_b arguments must be integers, got n={!r}, m={!r}".format(n, m))
        if m < 0:
            raise InvalidArgument("I_b needs m >= 0, got m={}".format(m))
        if n >= 0 and m == 0:
            raise InvalidArgument("I_b(n, 0) is undefined for n >= 0, got n={}".format(n))
        return cls(n, m)

    @property
    def last_index(self):
        """Largest z <= m with z = n (mod 2), the last term that contributes."""
        if self.n <= self.m:
            return self.n
        return self.m if (self.n - self.m) % 2 == 0 else self.m - 1


def ib_exact(n, m):
    args = IbArgs.create(n, m)
    if args.n < 0:
        return ZERO
    last = args.last_index
    total = 0
    coefficient = 1
    z = 0
    # walk z in steps of two from n mod 2, updating C(m, z) multiplicatively
    if last % 2 == 1:
        coefficient = m
        z = 1
    while z <= last:
        total += coefficient
        coefficient = coefficient * (m - z) * (m - z - 1) // ((z + 1) * (z + 2))
        z += 2
    return Dyadic(total, m - 1)


class IbRow(object):
    """All I_b(n, m) for one m, sharing a single binomial row.

    parity_sums[k] is the sum of C(m, z) over z <= k with z = k (mod 2).
    """

    def __init__(self, m):
        if not is_integer(m) or m < 1:
            raise InvalidArgument("IbRow needs an integer m >= 1, got {!r}".format(m))
        self.m = m

    @cached_property
    def parity_sums(self):
        sums = []
        coefficient = 1
        for z in range(self.m + 1):
            if z > 0:
                coefficient = coefficient * (self.m - z + 1) // z
            sums.append(coefficient + (sums[z - 2] if z >= 2 else 0))
        return sums

    def exact(self, n):
        if n < 0:
            return ZERO
        last = IbArgs(n, self.m).last_index
        return Dyadic(self.parity_sums[last], self.m - 1)


def _stirling_remainder(n):
    """log(n!) - log(sqrt(2 pi n) (n / e)**n)"""
    if n <= 15:
        return math.lgamma(n + 1.0) - (n + 0.5) * math.log(n) + n - 0.5 * LOG_2PI
    inverse_square = 1.0 / (n * n)
    s0, s1, s2, s3, s4 = STIRLING_SERIES
    return (s0 - (s1 - (s2 - (s3 - s4 * inverse_square) * inverse_square) * inverse_square)
            * inverse_square) / n


def _deviance(x, mean):
    """x log(x / mean) + mean - x, without cancellation near x = mean."""
    if abs(x - mean) < 0.1 * (x + mean):
        v = (x - mean) / (x + mean)
        total = (x - mean) * v
        term = 2.0 * x * v
        j = 1
        while True:
            term *= v * v
            updated = total + term / (2 * j + 1)
            if updated == total:
                return updated
            total = updated
            j += 1
    return x * math.log(x / mean) + mean - x


def log_half_binomial(m, z):
    """log(C(m, z) / 2**m) from the saddle-point form of the log-gamma ratio."""
    if z == 0 or z == m:
        return -m * LOG_2
    mean = m / 2.0
    return (
        _stirling_remainder(m) - _stirling_remainder(z) - _stirling_remainder(m - z)
        - _deviance(z, mean) - _deviance(m - z, mean)
        + 0.5 * (math.log(m) - LOG_2PI - math.log(z) - math.log(m - z))
    )


def ib_float(n, m):
    args = IbArgs.create(n, m)
    if args.n < 0:
        return 0.0
    if args.n >= m:
        return 1.0
    last = args.last_index
    if 2 * last <= m:
        peak = last
    else:
        peak = m // 2
        if (peak - last) % 2:
            peak += 1

    first = 2.0 * math.exp(log_half_binomial(m, peak))
    if first == 0.0:
        return 0.0

    terms = [first]
    term, z = first, peak
    while z >= 2:
        term *= z * (z - 1) / ((m - z + 2.0) * (m - z + 1.0))
        z -= 2
        terms.append(term)
        if term < NEGLIGIBLE_TERM * first:
            break
    term, z = first, peak
    while z + 2 <= last:
        term *= (m - z) * (m - z - 1.0) / ((z + 1.0) * (z + 2.0))
        z += 2
        terms.append(term)
        if term < NEGLIGIBLE_TERM * first:
            break
    return min(1.0, math.fsum(terms))


def ib(n, m, mode=MODE_AUTO, limit=None):
    """I_b(n, m) as a float, through the exact path when it is allowed."""
    if mode not in MODES:
        raise InvalidArgument("Unknown evaluation mode '{}'".format(mode))
    IbArgs.create(n, m)
    if mode == MODE_FLOAT:
        return ib_float(n, m)
    limit = resolve_exact_limit(limit)
    if m <= limit:
        return float(ib_exact(n, m))
    if mode == MODE_EXACT:
        raise ResourceLimitExceeded('Exact I_b evaluation with m', m, limit)
    log.debug('I_b({}, {}) above the exact limit {}, using log space'.format(n, m, limit))
    return ib_float(n, m)


def ib_pair_identity_check(n, m):
    if not is_integer(m) or m < 1:
        raise InvalidArgument("The pair identity needs an integer m >= 1, got {!r}".format(m))
    return ib_exact(n, m) + ib_exact(n - 1, m) == 2 * ib_exact(n, m + 1)
