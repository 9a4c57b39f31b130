"""
Tests for the dworklab command line.
"""

import json
import math

import pytest
from click.testing import CliRunner

from dworklab import __version__
from dworklab.analysis import BadPrimeReport, generate_example
from dworklab.cli import cli, main
from dworklab.parsers import parse_form


@pytest.fixture
def invoke(tmp_path):
    runner = CliRunner()

    def run(*args):
        return runner.invoke(cli, ['--cache-dir', str(tmp_path / 'cache')] + list(args))
    return run


def _json(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestAlgebraCommands:
    def test_rank(self, invoke):
        data = _json(invoke('rank', '--form', 'x1^3+x1*x2^2+x2*x3*x4'))
        assert data['rank'] == 2
        assert data['witness_variable'] == 1

    def test_dwork_check(self, invoke):
        data = _json(invoke('dwork-check', '--form', 'x1^3+x2^3+x2*x3^2'))
        assert data['dwork_regular'] is False
        assert data['failing_subset'] == [3]
        assert data['kind'] == 'zero_polynomial'

    def test_dwork_check_over_finite_field(self, invoke):
        data = _json(invoke('dwork-check', '--form', 'x1^3+x2^3+x3^3+x1*x2^2+x2*x3^2', '--q', '7'))
        assert data['dwork_regular'] is True

    def test_nonsingular(self, invoke):
        assert _json(invoke('nonsingular', '--form', 'x1^2+2*x1*x2+x2^2')) == {'nonsingular': False}
        assert _json(invoke('nonsingular', '--form', 'x1^2+x2^2')) == {'nonsingular': True}

    def test_bad_primes(self, invoke):
        data = _json(invoke('bad-primes', '--form', 'x1^2+5*x1*x2+x2^2', '--q-max', '10'))
        assert data['excluded_primes'] == [2]
        assert data['bad_primes'] == [3, 7]
        assert data['largest_bad_prime'] == 7

    @pytest.mark.parametrize('args, expected', [((), 6), (('--threads', '2'), 2)])
    def test_threads_default_to_cpu_count(self, invoke, monkeypatch, args, expected):
        seen = {}

        def fake_scan(h, q_max, config, threads, progress):
            seen['threads'] = threads
            return BadPrimeReport(q_max=q_max)

        monkeypatch.setattr('dworklab.cli.os.cpu_count', lambda: 6)
        monkeypatch.setattr('dworklab.cli.bad_primes', fake_scan)
        _json(invoke(*args, 'bad-primes', '--form', 'x1^2+x2^2', '--q-max', '10'))
        assert seen['threads'] == expected

    def test_threads_must_be_positive(self, invoke):
        result = invoke('--threads', '0', 'rank', '--form', 'x1^3+x2^3')
        assert result.exit_code == 2

    def test_deligne_specialize(self, invoke):
        data = _json(invoke('deligne-specialize', '--form', 'x1^3+x2^3+x3^3+x1*x2^2+x2*x3^2',
                            '--q', '7', '--values', '0,0'))
        assert data['is_deligne'] is True
        assert data['leading_form'] == 'x3^3'
        assert data['variables'] == [3]

    def test_center_and_decompose(self, invoke):
        assert _json(invoke('center', '--form', 'x1^3+x2^3+x1*x2^2'))['center_dimension'] == 2
        data = _json(invoke('decompose', '--form', 'x1^3+x2^3+x1*x2^2'))
        assert data['verdict'] == 'indecomposable-over-Q'
        assert data['central'] is False

    def test_examples(self, invoke):
        data = _json(invoke('examples', '--n', '3', '--k', '3', '--r', '2'))
        assert parse_form(data['form'], 3) == generate_example(3, 3, 2)
        data = _json(invoke('examples', '--n', '3', '--k', '3', '--nonregular'))
        assert parse_form(data['form'], 3) == parse_form('x1^3 + x2^3 + x2*x3^2')


class TestThresholdCommands:
    def test_delta(self, invoke):
        assert _json(invoke('delta', '--n', '3', '--k', '3', '--r', '2')) == {
            'delta': '1/20', 's_threshold': '3/10',
        }

    def test_codim(self, invoke):
        data = _json(invoke('codim', '--n', '3', '--k', '3'))
        assert (data['codim_rank_n_minus_1'], data['codim_rank_1']) == (3, 5)

    def test_params_with_instance(self, invoke):
        data = _json(invoke('params', '--n', '3', '--k', '3', '--r', '2', '--j', '40'))
        assert data['kappa'] == '1/10'
        assert data['lambda'] == '4/5'
        assert data['modulus'] == 10
        assert data['instance']['R_over_L'] == 256


class TestSumCommands:
    def test_expsum_table(self, invoke, tmp_path):
        data = _json(invoke('expsum-table', '--poly', 'x1^2', '--q', '5'))
        assert data['parseval'] is True
        assert data['conjugate_symmetric'] is True
        assert data['max_nonzero_frequency'] == pytest.approx(math.sqrt(5))
        assert list((tmp_path / 'cache').glob('*.dwxs'))

    def test_good_pairs(self, invoke):
        data = _json(invoke('good-pairs', '--poly', 'x1^2', '--q', '5', '--list'))
        assert data['count'] == 20
        assert len(data['pairs']) == 20


class TestExitCodes:
    def test_refusal_exits_with_one(self, invoke):
        result = invoke('bad-primes', '--form', 'x1*x2', '--q-max', '10')
        assert result.exit_code == 1
        assert 'refused' in result.output

    def test_full_rank_plan_is_refused(self, invoke):
        assert invoke('params', '--n', '3', '--k', '3', '--r', '3').exit_code == 1

    def test_syntax_error_is_usage_error(self, invoke):
        result = invoke('rank', '--form', 'x1^^2')
        assert result.exit_code == 2

    def test_parameter_range_is_usage_error(self, invoke):
        assert invoke('delta', '--n', '3', '--k', '3', '--r', '4').exit_code == 2

    def test_main_returns_codes(self, capsys):
        assert main(['delta', '--n', '3', '--k', '3', '--r', '2']) == 0
        assert json.loads(capsys.readouterr().out)['delta'] == '1/20'
        assert main(['rank', '--form', 'x1^']) == 2

    def test_version(self, invoke):
        result = invoke('--version')
        assert result.exit_code == 0
        assert __version__ in result.output
