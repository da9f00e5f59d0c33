"""
Independent oracles for G(x, y, m): the recurrence over the anti-diagonal
x + y = const, the exact distribution of the extremal stopped walk, and a
seeded Monte Carlo run of that walk.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import logging
import math
from collections import namedtuple

import numpy as np

from .config import walk_budget_setting
from .const import MAX_SEED
from .const import SIM_CHUNK_SIZE
from .errors import InvalidArgument
from .errors import ResourceLimitExceeded
from .exactnum import Dyadic
from .exactnum import is_integer
from .exactnum import ONE
from .parallel import parallel_execute
from .tightbound import check_counts
from .tightbound import INF


log = logging.getLogger(__name__)

# splitmix64 constants
GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX_MULTIPLIER_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_MULTIPLIER_2 = np.uint64(0x94D049BB133111EB)
BITS_PER_WORD = 64


def g_recurrence(x, y, m):
    """G-bar(x, y, m) by dynamic programming along x + y = n.

    values[i] holds G-bar(i, n - i, j) scaled by 2**j after j steps.
    """
    check_counts(x=x, y=y, m=m)
    if x == 0 or y == 0:
        return ONE
    n = x + y
    values = [0] * (n + 1)
    values[0] = values[n] = 1
    for j in range(m):
        full = 1 << (j + 1)
        values = [full] + [values[i - 1] + values[i + 1] for i in range(1, n)] + [full]
    return Dyadic(values[x], m)


class WalkDistribution(namedtuple('_WalkDistribution', 'x y m counts')):
    """Law of the stopped walk after m steps.

    counts[p + y] / 2**m is the probability of sitting at position p.
    """

    @classmethod
    def initial(cls, x, y):
        check_counts(x=x, y=y)
        counts = [0] * (x + y + 1)
        counts[y] = 1
        return cls(x, y, 0, tuple(counts))

    @property
    def width(self):
        return self.x + self.y + 1

    def step(self):
        last = self.width - 1
        counts = [0] * self.width
        for i, count in enumerate(self.counts):
            if not count:
                continue
            if i == 0 or i == last:
                counts[i] += 2 * count
            else:
                counts[i - 1] += count
                counts[i + 1] += count
        return self._replace(m=self.m + 1, counts=tuple(counts))

    def mass_at(self, position):
        if position < -self.y or position > self.x:
            return Dyadic(0)
        return Dyadic(self.counts[position + self.y], self.m)

    def as_dict(self):
        return {
            i - self.y: Dyadic(count, self.m)
            for i, count in enumerate(self.counts) if count
        }

    def total(self):
        return Dyadic(sum(self.counts), self.m)


def _check_walk_budget(x, y, m, budget=None):
    if budget is None:
        budget = walk_budget_setting()
    cells = (x + y + 1) * m
    if cells > budget:
        raise ResourceLimitExceeded('Stopped walk evolution with (x + y + 1) * m', cells, budget)


def walk_evolution(x, y, m, budget=None):
    check_counts(x=x, y=y, m=m)
    _check_walk_budget(x, y, m, budget)
    distribution = WalkDistribution.initial(x, y)
    yield distribution
    for _ in range(m):
        distribution = distribution.step()
        yield distribution


def walk_distribution(x, y, m, budget=None):
    distribution = None
    for distribution in walk_evolution(x, y, m, budget):
        pass
    return distribution


def hitting_mass(d):
    if d.x == 0 and d.y == 0:
        return d.mass_at(0)
    return d.mass_at(d.x) + d.mass_at(-d.y)


def _heads_row(m):
    coefficient = 1
    for heads in range(m + 1):
        yield heads, coefficient
        coefficient = coefficient * (m - heads) // (heads + 1)


def random_walk_tail(x, m):
    """P(S_m >= x) for the free fair +-1 walk."""
    check_counts(x=x, m=m)
    return Dyadic(sum(c for k, c in _heads_row(m) if 2 * k - m >= x), m)


def random_walk_two_sided(x, m):
    """P(|S_m| >= x) for the free fair +-1 walk."""
    check_counts(x=x, m=m)
    return Dyadic(sum(c for k, c in _heads_row(m) if abs(2 * k - m) >= x), m)


class SimConfig(namedtuple('_SimConfig', 'x y m trials seed')):

    @classmethod
    def create(cls, x, y, m, trials, seed=0):
        check_counts(x=x, m=m)
        if y != INF:
            check_counts(y=y)
        if not is_integer(trials) or trials < 1:
            raise InvalidArgument("trials must be a positive integer, got {!r}".format(trials))
        if not is_integer(seed) or not 0 <= seed <= MAX_SEED:
            raise InvalidArgument("seed must be an unsigned 64-bit integer, got {!r}".format(seed))
        return cls(x, y, m, trials, seed)

    @property
    def one_sided(self):
        return self.y == INF


class SimResult(namedtuple('_SimResult', 'hits trials frequency stderr')):

    @classmethod
    def create(cls, hits, trials):
        frequency = hits / trials
        return cls(hits, trials, frequency, math.sqrt(frequency * (1.0 - frequency) / trials))

    def z_score(self, expected):
        """(frequency - expected) / stderr; None when stderr is zero and they differ."""
        difference = self.frequency - expected
        if self.stderr == 0:
            return 0.0 if difference == 0 else None
        return difference / self.stderr


def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * MIX_MULTIPLIER_1
    z = (z ^ (z >> np.uint64(27))) * MIX_MULTIPLIER_2
    return z ^ (z >> np.uint64(31))


def stream_words(seed, trial_indices, block):
    """64 random bits for each trial; bit b of block k drives step 64 * k + b."""
    with np.errstate(over='ignore'):
        key = _mix64((trial_indices * GOLDEN_GAMMA) ^ np.uint64(seed))
        return _mix64(key + np.uint64(block + 1) * GOLDEN_GAMMA)


def simulate_chunk(cfg, start, stop):
    count = stop - start
    lower = None if cfg.one_sided else -cfg.y
    if cfg.x == 0 or lower == 0:
        return count

    trial_indices = np.arange(start, stop, dtype=np.uint64)
    position = np.zeros(count, dtype=np.int64)
    active = np.ones(count, dtype=bool)
    words = None
    for step in range(cfg.m):
        offset = step % BITS_PER_WORD
        if offset == 0:
            words = stream_words(cfg.seed, trial_indices, step // BITS_PER_WORD)
        bits = ((words >> np.uint64(offset)) & np.uint64(1)).astype(np.int64)
        position += np.where(active, 2 * bits - 1, 0)
        active &= position < cfg.x
        if lower is not None:
            active &= position > lower
        if not active.any():
            break

    hits = position >= cfg.x
    if lower is not None:
        hits |= position <= lower
    return int(np.count_nonzero(hits))


def simulate(cfg, workers=None):
    chunks = [
        (start, min(start + SIM_CHUNK_SIZE, cfg.trials))
        for start in range(0, cfg.trials, SIM_CHUNK_SIZE)
    ]
    log.debug('Simulating {} in {} chunks'.format(cfg, len(chunks)))
    counts = parallel_execute(
        chunks,
        lambda chunk: simulate_chunk(cfg, *chunk),
        workers=workers,
    )
    return SimResult.create(sum(counts), cfg.trials)
