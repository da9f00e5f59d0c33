from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import itertools
from decimal import Decimal
from decimal import localcontext
from fractions import Fraction

from martight.exactnum import Dyadic

PI = Decimal('3.14159265358979323846264338327950288419716939937510')


def stopped_walk_hit_probability(x, y, m):
    """G(x, y, m) by walking all 2**m sign sequences of the stopped walk."""
    if x == 0 or y == 0:
        return Dyadic(1)
    hits = 0
    for signs in itertools.product((-1, 1), repeat=m):
        position = 0
        for sign in signs:
            position += sign
            if position >= x or position <= -y:
                hits += 1
                break
    return Dyadic(hits, m)


def decimal_erfc(z, digits=120):
    """erfc from the Maclaurin series of erf evaluated with `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        z = Decimal(z)
        square = z * z
        term = total = z
        cutoff = Decimal(10) ** -(digits - 10)
        n = 0
        while True:
            n += 1
            term = -term * square / n
            contribution = term / (2 * n + 1)
            if abs(contribution) < cutoff:
                break
            total += contribution
        return float(1 - 2 / PI.sqrt() * total)


def random_step_distribution(rng, pairs=3):
    """A finite distribution on [-1, 1] with mean exactly zero, as (atom, probability) pairs."""
    weights = [Fraction(rng.randint(1, 9)) for _ in range(pairs)]
    total = sum(weights)
    atoms = {}
    for weight in weights:
        low = -Fraction(rng.randint(1, 8), 8)
        high = Fraction(rng.randint(0, 8), 8)
        upper = -low / (high - low)
        atoms[high] = atoms.get(high, 0) + weight / total * upper
        atoms[low] = atoms.get(low, 0) + weight / total * (1 - upper)
    return sorted(atoms.items())
