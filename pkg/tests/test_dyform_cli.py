import json
from pathlib import Path
import pytest # type: ignore
import yaml # type: ignore

from DYFORM import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main # type: ignore

MATRICES = Path(__file__).resolve().parent.parent / '0_base_settings' / 'matrices'


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_conductor_summary(capsys):
    code, out = run(capsys, 'conductor', '--n', '2', '--q', '4')
    assert code == EXIT_PASS
    assert json.loads(out.out) == {'artin_rs': 28, 'swan_ad': 2, 'gamma': '4^6'}


def test_conductor_table(capsys):
    code, out = run(capsys, 'conductor', '--n', '3', '--q', '2', '--table')
    lines = out.out.strip().splitlines()
    assert code == EXIT_PASS
    assert lines[0].startswith('n,artin_rs,swan_sum')
    assert len(lines) == 4


def test_conductor_rejects_bad_q(capsys):
    code, out = run(capsys, 'conductor', '--n', '2', '--q', '6')
    assert code == EXIT_USAGE
    assert 'power of 2' in out.err


@pytest.mark.parametrize("x,expected", [('1', 3), ('g', -1), ('0b11', -1)])
def test_kl(capsys, x, expected):
    code, out = run(capsys, 'kl', '--f', '2', '--big-n', '2', '--x', x)
    assert code == EXIT_PASS
    assert int(out.out) == expected


def test_kl_bad_input(capsys):
    assert run(capsys, 'kl', '--f', '2', '--modulus', '0b101', '--big-n', '2', '--x', '1')[0] == EXIT_USAGE
    assert run(capsys, 'kl', '--f', '2', '--big-n', '2', '--x', '0')[0] == EXIT_USAGE


def test_char_from_matrix_file(capsys):
    code, out = run(capsys, 'char', '--matrix', str(MATRICES / 'h_u_n1_u1.json'), '--a', '1', '--f', '2')
    result = json.loads(out.out)
    assert code == EXIT_PASS
    assert result['group'] == 'Sp'
    assert result['torus_sum'] == result['kloosterman'] == 3


def test_twisted_from_matrix_file(capsys):
    code, out = run(capsys, 'twisted', '--matrix', str(MATRICES / 'g_u_n1_omega_teichmuller.json'),
                    '--a', '1', '--f', '2')
    result = json.loads(out.out)
    assert code == EXIT_PASS
    assert result['group'] == 'GL'
    assert result['argument_log'] == 1
    assert result['torus_sum'] == -1


def test_char_and_twisted_agree_on_the_example_pair(capsys):
    sp = json.loads(run(capsys, 'char', '--n', '2', '--u', 'g', '--a', 'g^2', '--f', '2')[1].out)
    gl = json.loads(run(capsys, 'twisted', '--n', '2', '--u', 'g', '--a', 'g^2', '--f', '2')[1].out)
    assert sp['torus_sum'] == gl['torus_sum'] == sp['kloosterman']


def test_char_needs_a_matrix_or_parameters(capsys):
    code, out = run(capsys, 'char', '--a', '1', '--f', '2')
    assert code == EXIT_USAGE
    assert '--matrix' in out.err


def test_endoscopy(capsys):
    code, out = run(capsys, 'endoscopy', '--n-max', '2', '--f', '1')
    lines = out.out.strip().splitlines()
    assert code == EXIT_PASS
    assert lines[0] == 'n,u,a,value,norm_ok,holds'
    assert len(lines) == 3
    assert all(line.endswith('True') for line in lines[1:])


def _verify(tmp_path, *extra):
    out = tmp_path / 'report.json'
    argv = ['verify', '--suite', 'gf2,conductor', '--f', '1', '--m', '3', '--samples', '10',
            '--out', str(out), *extra]
    return main(argv), out


def test_verify_writes_the_report(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = _verify(tmp_path, '--csv', str(tmp_path / 'checks.csv'))
    report = json.loads(out.read_text())
    assert code == EXIT_PASS
    assert report['summary']['fail'] == 0
    assert report['summary']['pass'] == len(report['checks'])
    assert report['field'] == {'f': 1, 'q': 2, 'modulus_bits': '10'}
    assert (tmp_path / 'checks.csv').exists()
    assert list((tmp_path / '_workLog_dyform').glob('dyform_general_*.log'))


def test_verify_negative_control(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = _verify(tmp_path, '--negative-control')
    report = json.loads(out.read_text())
    assert code == EXIT_FAIL
    assert report['summary']['fail'] == 1
    assert report['checks'][-1]['id'] == 'negative_control.mutated_h_is_norm[n=1,f=1]'


def test_verify_is_reproducible(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    reports = []
    for _ in range(2):
        _, out = _verify(tmp_path, '--seed', '123')
        report = json.loads(out.read_text())
        for check in report['checks']:
            check.pop('elapsed_ms')
        reports.append(report)
    assert reports[0] == reports[1]


def test_verify_rejects_unknown_config_keys(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    path = tmp_path / 'config_active.yaml'
    path.write_text(yaml.safe_dump({'FIELD_DEGREE': 1, 'HYDROLOGICAL_MODEL': 'SUMMA'}))
    code = main(['verify', '--config', str(path)])
    assert code == EXIT_USAGE
    assert 'Unknown configuration key' in capsys.readouterr().err


def test_verify_rejects_bad_modulus(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert _verify(tmp_path, '--f', '2', '--modulus', '0b101')[0] == EXIT_USAGE


@pytest.mark.parametrize("modulus", ['-111', '0b-111', '12'])
def test_negative_or_non_binary_modulus_is_a_usage_error(tmp_path, monkeypatch, capsys, modulus):
    monkeypatch.chdir(tmp_path)
    assert run(capsys, 'kl', '--f', '2', f'--modulus={modulus}', '--big-n', '2', '--x', '1')[0] == EXIT_USAGE
    assert _verify(tmp_path, '--f', '2', f'--modulus={modulus}')[0] == EXIT_USAGE


def test_negative_modulus_in_yaml_is_a_usage_error(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    path = tmp_path / 'config_active.yaml'
    path.write_text('FIELD_DEGREE: 2\nFIELD_MODULUS: -111\n')
    assert main(['verify', '--config', str(path)]) == EXIT_USAGE
    assert 'modulus' in capsys.readouterr().err
