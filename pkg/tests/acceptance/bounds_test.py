from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import math

import pytest

from martight.asymptotics import convergence_probe
from martight.oracles import SimConfig
from martight.oracles import simulate
from martight.tightbound import g_closed
from martight.tightbound import g_one_sided


class TestAzumaDominance(object):

    def test_every_threshold_up_to_200_steps(self):
        for m in range(1, 201):
            for x in range(1, m + 1):
                azuma = math.exp(-x * x / (2.0 * m))
                assert float(g_one_sided(x, m)) <= azuma + 1e-12, (x, m)
                assert float(g_closed(x, x, m)) <= 2 * azuma + 1e-12, (x, m)


class TestTightness(object):

    @pytest.mark.parametrize('x,y,m', [(2, 2, 8), (3, 5, 32), (4, 4, 64)])
    def test_simulation_matches_the_bound(self, x, y, m):
        cfg = SimConfig.create(x, y, m, 10 ** 6, seed=2019)
        result = simulate(cfg)
        g = float(g_closed(x, y, m))
        assert abs(result.frequency - g) <= 4 * math.sqrt(g * (1 - g) / 10 ** 6)
        assert simulate(cfg, workers=3) == result


class TestConvergence(object):

    @pytest.mark.parametrize('two_sided', [False, True])
    @pytest.mark.parametrize('r', [0.5, 1, 2])
    def test_gap_shrinks(self, r, two_sided):
        gaps = [convergence_probe(r, m, two_sided=two_sided).gap for m in (10 ** 2, 10 ** 4, 10 ** 6)]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_gap_at_ten_thousand_steps(self):
        assert convergence_probe(1, 10 ** 4).gap <= 0.02
