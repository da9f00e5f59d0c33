from __future__ import absolute_import
from __future__ import unicode_literals

import json
import os
import shutil
import subprocess
import sys
import tempfile
from collections import namedtuple

import pytest

from martight import __version__
from martight.const import EXIT_IO
from martight.const import EXIT_RESOURCE
from martight.const import EXIT_USAGE

ProcessResult = namedtuple('ProcessResult', 'stdout stderr')

SWEEP_HEADER = 'r,azuma_one,azuma_two,tight_one,tight_two,corollary_two,rw_one,rw_two'
SWEEP_GOLDEN = os.path.join(os.path.dirname(__file__), '..', 'fixtures', 'sweep_golden.csv')


def start_process(options, env=None):
    proc = subprocess.Popen(
        [sys.executable, '-m', 'martight'] + options,
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        env=dict(os.environ, **(env or {})))
    print("Running process: %s" % proc.pid)
    return proc


def wait_on_process(proc, returncode=0):
    stdout, stderr = proc.communicate()
    if proc.returncode != returncode:
        print("Stderr: {}".format(stderr))
        print("Stdout: {}".format(stdout))
        assert proc.returncode == returncode
    return ProcessResult(stdout.decode('utf-8'), stderr.decode('utf-8'))


def dispatch(options, returncode=0, env=None):
    return wait_on_process(start_process(options, env=env), returncode=returncode)


def dispatch_json(options, **kwargs):
    return json.loads(dispatch(options, **kwargs).stdout)


@pytest.fixture
def tmpdir_path():
    path = tempfile.mkdtemp('martight')
    yield path
    shutil.rmtree(path)


class TestBoundCommand(object):

    def test_two_sided(self):
        data = dispatch_json(['bound', '--x', '2', '--y', '2', '--m', '2'])
        assert data['results']['tight'] == {'fraction': '1/2^1', 'decimal': '0.5'}
        assert data['results']['corollary']['decimal'] == '0.5'
        assert abs(data['results']['azuma_two'] - 0.735759) <= 1e-6
        assert data['query'] == {'x': 2, 'y': 2, 'm': 2, 'c': 1.0}
        assert data['meta'] == {'mode': 'exact', 'version': __version__}

    def test_zero_thresholds(self):
        data = dispatch_json(['bound', '--x', '0', '--y', '0', '--m', '9'])
        assert data['results']['tight']['decimal'] == '1'

    def test_one_sided(self):
        data = dispatch_json(['bound', '--x', '1', '--y', 'inf', '--m', '1'])
        assert data['results']['tight']['decimal'] == '0.5'
        assert data['results']['corollary'] == data['results']['tight']
        assert data['query']['y'] == 'inf'

    def test_jump_bound_rescales_azuma(self):
        data = dispatch_json(['bound', '--x', '3', '--y', 'inf', '--m', '9', '--c', '0.5'])
        assert abs(data['results']['azuma_one'] - 0.1353352832) <= 1e-9

    def test_float_mode(self):
        data = dispatch_json(['bound', '--x', '2', '--y', '2', '--m', '2', '--exact', 'false'])
        assert data['results']['tight'] is None
        assert abs(data['results']['tight_float'] - 0.5) <= 1e-12
        assert data['meta']['mode'] == 'float'

    def test_csv(self):
        stdout = dispatch(['bound', '--x', '2', '--y', '2', '--m', '2', '--format', 'csv']).stdout
        header, row, end = stdout.split('\n')
        assert header.split(',')[:4] == ['c', 'm', 'x', 'y']
        assert 'tight_decimal' in header.split(',')
        assert end == ''

    def test_table(self):
        stdout = dispatch(['bound', '--x', '2', '--y', '2', '--m', '2', '--format', 'table']).stdout
        assert 'azuma_two_clamped' in stdout

    @pytest.mark.parametrize('options', [
        ['--x', '2', '--y', '2', '--m', '-1'],
        ['--x', '2', '--y', '2', '--m', '2', '--c', '0'],
        ['--x', 'inf', '--y', 'inf', '--m', '2'],
        ['--x', '2', '--y', '2', '--m', '2', '--format', 'xml'],
        ['--x', '2', '--y', '2'],
    ])
    def test_usage_errors(self, options):
        dispatch(['bound'] + options, returncode=EXIT_USAGE)

    def test_exact_limit(self):
        result = dispatch(
            ['bound', '--x', '2', '--y', '2', '--m', '20'],
            returncode=EXIT_RESOURCE,
            env={'MARTIGHT_EXACT_LIMIT': '10'})
        assert 'exceeds the configured limit of 10' in result.stderr
        data = dispatch_json(
            ['bound', '--x', '2', '--y', '2', '--m', '20', '--exact', 'false'],
            env={'MARTIGHT_EXACT_LIMIT': '10'})
        assert data['results']['tight'] is None

    def test_invalid_setting(self):
        dispatch(
            ['bound', '--x', '2', '--y', '2', '--m', '2'],
            returncode=EXIT_USAGE,
            env={'MARTIGHT_EXACT_LIMIT': 'lots'})


class TestOracleCommand(object):

    def test_all(self):
        data = dispatch_json(['oracle', '--x', '2', '--y', '2', '--m', '2', '--method', 'all'])
        for name in ('closed', 'recurrence', 'walk'):
            assert data['results'][name]['fraction'] == '1/2^1'
        assert data['results']['agree'] is True

    def test_recurrence(self):
        data = dispatch_json(['oracle', '--x', '3', '--y', '0', '--m', '7', '--method', 'recurrence'])
        assert data['results']['recurrence']['decimal'] == '1'

    def test_closed_without_steps(self):
        data = dispatch_json(['oracle', '--x', '1', '--y', '1', '--m', '0', '--method', 'closed'])
        assert data['results']['closed']['decimal'] == '0'

    def test_unknown_method(self):
        dispatch(['oracle', '--x', '1', '--y', '1', '--m', '2', '--method', 'guess'],
                 returncode=EXIT_USAGE)

    def test_walk_budget(self):
        dispatch(['oracle', '--x', '4', '--y', '4', '--m', '100', '--method', 'walk'],
                 returncode=EXIT_RESOURCE,
                 env={'MARTIGHT_WALK_BUDGET': '100'})


class TestSimulateCommand(object):

    def test_first_step_absorbs(self):
        data = dispatch_json(
            ['simulate', '--x', '1', '--y', '1', '--m', '2', '--trials', '1000', '--seed', '7'])
        assert data['results']['frequency'] == 1.0
        assert data['results']['z_score'] == 0.0
        assert data['meta']['seed'] == 7

    def test_close_to_exact(self):
        data = dispatch_json(
            ['simulate', '--x', '2', '--y', '2', '--m', '2', '--trials', '1000000', '--seed', '42'])
        assert data['results']['exact']['decimal'] == '0.5'
        assert abs(data['results']['z_score']) <= 4

    def test_one_sided(self):
        data = dispatch_json(
            ['simulate', '--x', '2', '--y', 'inf', '--m', '4', '--trials', '100000', '--seed', '1'])
        assert data['results']['expected'] == 0.375
        assert abs(data['results']['z_score']) <= 4

    def test_deterministic(self):
        options = ['simulate', '--x', '3', '--y', '5', '--m', '32', '--trials', '70000', '--seed', '3']
        first = dispatch(options + ['--workers', '1']).stdout
        assert dispatch(options + ['--workers', '4']).stdout == first

    def test_bad_seed(self):
        dispatch(['simulate', '--x', '1', '--y', '1', '--m', '2', '--seed', '-4'],
                 returncode=EXIT_USAGE)


class TestEnvelopeCommand(object):

    @pytest.mark.parametrize('n,m,t,expected', [
        ('3', '5', '4', 1.0),
        ('4', '2', '0', 0.5),
        ('4', '2', '1', 0.5),
    ])
    def test_values(self, n, m, t, expected):
        data = dispatch_json(['envelope', '--n', n, '--m', m, '--t', t])
        assert data['results']['value'] == expected
        assert float(data['results']['exact']['decimal']) == expected

    def test_fractional_position(self):
        data = dispatch_json(['envelope', '--n', '4', '--m', '2', '--t', '-2.5'])
        assert data['results']['exact'] is None
        assert data['meta']['mode'] == 'float'


class TestSweepCommand(object):

    def test_grid(self):
        stdout = dispatch(['sweep', '--r-min', '0.05', '--r-max', '3', '--step', '0.05']).stdout
        lines = stdout.split('\n')
        assert lines[0] == SWEEP_HEADER
        assert lines[-1] == ''
        rows = [[float(v) for v in line.split(',')] for line in lines[1:-1]]
        assert len(rows) == 60
        for r, azuma_one, azuma_two, tight_one, tight_two, corollary_two, rw_one, rw_two in rows:
            assert abs(rw_one - tight_one / 2) <= 1e-8
            assert rw_two == tight_one
            assert tight_one <= azuma_one
            assert tight_two <= min(azuma_two, corollary_two)
        at_one = rows[19]
        assert at_one[0] == 1.0
        assert abs(at_one[3] - 0.317310) <= 1e-6
        assert abs(at_one[4] - 0.629223) <= 1e-6

    def test_byte_stable(self, tmpdir_path):
        options = ['sweep', '--r-min', '0.05', '--r-max', '3', '--step', '0.05']
        first = os.path.join(tmpdir_path, 'first.csv')
        second = os.path.join(tmpdir_path, 'second.csv')
        dispatch(options + ['--out', first, '--workers', '1'])
        dispatch(options + ['--out', second])
        with open(first, 'rb') as fh:
            content = fh.read()
        with open(second, 'rb') as fh:
            assert fh.read() == content
        assert b'\r' not in content

    def test_matches_golden_file(self, tmpdir_path):
        path = os.path.join(tmpdir_path, 'sweep.csv')
        dispatch(['sweep', '--r-min', '1', '--r-max', '3', '--step', '1', '--out', path])
        with open(path, 'rb') as fh:
            content = fh.read()
        with open(SWEEP_GOLDEN, 'rb') as fh:
            assert content == fh.read()

    def test_invalid_range(self):
        dispatch(['sweep', '--r-min', '2', '--r-max', '1', '--step', '0.1'], returncode=EXIT_USAGE)

    def test_unwritable_path(self, tmpdir_path):
        path = os.path.join(tmpdir_path, 'missing', 'sweep.csv')
        dispatch(['sweep', '--r-min', '1', '--r-max', '2', '--step', '0.5', '--out', path],
                 returncode=EXIT_IO)


class TestTopLevel(object):

    def test_version(self):
        assert dispatch(['version', '--short']).stdout.strip() == __version__

    def test_help(self):
        assert 'Usage: bound' in dispatch(['help', 'bound']).stdout

    def test_unknown_command(self):
        result = dispatch(['plot'], returncode=EXIT_USAGE)
        assert 'No such command' in result.stderr

    def test_no_command(self):
        dispatch([], returncode=EXIT_USAGE)
