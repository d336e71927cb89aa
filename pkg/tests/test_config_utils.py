from pathlib import Path
import pytest # type: ignore
import yaml # type: ignore

from utils.configHandling_utils.config_utils import ConfigManager, RunConfig, SUITE_ORDER, parse_suites # type: ignore

TEMPLATE = Path(__file__).resolve().parent.parent / '0_config_files' / 'config_template.yaml'


def write_config(tmp_path, values):
    path = tmp_path / 'config_active.yaml'
    path.write_text(yaml.safe_dump(values))
    return path


def test_defaults():
    config = RunConfig.from_sources()
    assert (config.f, config.m, config.n_max, config.seed) == (2, 4, 3, 42)
    assert config.ordered_suites() == SUITE_ORDER
    assert config.csv is None
    assert config.matgrp_max_f == 2


def test_template_loads_to_defaults():
    config = RunConfig.from_sources(ConfigManager(TEMPLATE))
    assert config == RunConfig()


def test_flags_override_file(tmp_path):
    path = write_config(tmp_path, {'FIELD_DEGREE': 3, 'SEED': 11, 'SUITES': 'gf2,conductor'})
    config = RunConfig.from_sources(ConfigManager(path), {'seed': 5, 'n_max': None})
    assert config.f == 3
    assert config.seed == 5
    assert config.n_max == 3
    assert config.suites == ['gf2', 'conductor']


def test_modulus_is_kept_as_text(tmp_path):
    path = write_config(tmp_path, {'FIELD_MODULUS': 111})
    assert RunConfig.from_sources(ConfigManager(path)).modulus == '111'


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / 'empty.yaml'
    path.write_text('')
    assert RunConfig.from_sources(ConfigManager(path)) == RunConfig()


def test_unknown_keys_are_rejected(tmp_path):
    with pytest.raises(ValueError, match="Unknown configuration key"):
        RunConfig.from_sources(ConfigManager(write_config(tmp_path, {'DOMAIN_NAME': 'Bow'})))
    with pytest.raises(ValueError, match="Unknown override"):
        RunConfig.from_sources(overrides={'bogus': 1})


def test_missing_or_malformed_file(tmp_path):
    with pytest.raises(ValueError, match="not found"):
        ConfigManager(tmp_path / 'absent.yaml')
    path = tmp_path / 'list.yaml'
    path.write_text('- 1\n- 2\n')
    with pytest.raises(ValueError, match="mapping"):
        ConfigManager(path)


@pytest.mark.parametrize("overrides", [
    {'f': 0},
    {'m': 0},
    {'samples': -1},
    {'workers': 0},
    {'matgrp_max_f': 0},
    {'seed': -3},
    {'seed': 2 ** 64},
    {'suites': 'gf2,nonsense'},
])
def test_validation(overrides):
    with pytest.raises(ValueError):
        RunConfig.from_sources(overrides=overrides)


def test_low_precision_only_blocks_matrix_suites():
    with pytest.raises(ValueError, match="too small"):
        RunConfig.from_sources(overrides={'m': 1, 'suites': 'matgrp'})
    assert RunConfig.from_sources(overrides={'m': 1, 'suites': 'gf2,dring'}).m == 1


def test_parse_suites():
    assert parse_suites('all') == SUITE_ORDER
    assert parse_suites(['gf2', 'all']) == SUITE_ORDER
    assert parse_suites(' dring , gf2 ') == ['dring', 'gf2']
    assert RunConfig(suites=['conductor', 'gf2']).ordered_suites() == ['gf2', 'conductor']


def test_save_round_trip(tmp_path):
    manager = ConfigManager(write_config(tmp_path, {'N_MAX': 2}))
    manager.set('SEED', 9)
    manager.save()
    assert ConfigManager(manager.config_file).get('SEED') == 9


def test_echo_keeps_declaration_order():
    keys = list(RunConfig().echo())
    assert keys[:4] == ['f', 'modulus', 'm', 'n_max']
