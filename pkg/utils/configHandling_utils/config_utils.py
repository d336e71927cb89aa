import yaml # type: ignore
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Dict, Any, List, Optional

SUITE_ORDER = ['gf2', 'dring', 'matgrp', 'charsums', 'conductor', 'endoscopy']
# suites whose checks need the corner 2u and congruences mod p^2
MATRIX_SUITES = {'matgrp', 'charsums', 'endoscopy'}

# YAML key -> RunConfig attribute
KEY_MAP = {
    'FIELD_DEGREE': 'f',
    'FIELD_MODULUS': 'modulus',
    'PRECISION': 'm',
    'N_MAX': 'n_max',
    'SAMPLES': 'samples',
    'CHARSUM_SAMPLES': 'charsum_samples',
    'SEED': 'seed',
    'SUITES': 'suites',
    'OUTPUT_PATH': 'out',
    'CSV_PATH': 'csv',
    'LOG_DIR': 'log_dir',
    'WORKERS': 'workers',
    'SHOW_PROGRESS': 'show_progress',
    'NEGATIVE_CONTROL': 'negative_control',
    'KL_ORACLE_MAX_F': 'kl_oracle_max_f',
    'KL_MAX_N': 'kl_max_n',
    'FOURIER_MAX_F': 'fourier_max_f',
    'EXHAUSTIVE_MAX_F': 'exhaustive_max_f',
    'CHARSUM_MAX_F': 'charsum_max_f',
    'MATGRP_MAX_F': 'matgrp_max_f',
    'INJECTIVITY_MAX_F': 'injectivity_max_f',
}


class ConfigManager:
    def __init__(self, config: Optional[str | Path] = None):
        self.config_file = Path(config) if config is not None else None
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        if self.config_file is None:
            return {}
        if not self.config_file.exists():
            raise ValueError(f"Configuration file not found: {self.config_file}")
        with open(self.config_file, 'r') as config_file:
            loaded = yaml.safe_load(config_file)
        if loaded is None:
            return {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Configuration file {self.config_file} must hold a mapping of KEY: value")
        return loaded

    def get(self, key, default=None):
        return self.config.get(key, default)

    def set(self, key, value):
        self.config[key] = value

    def save(self, path: Optional[str | Path] = None):
        target = Path(path) if path is not None else self.config_file
        if target is None:
            raise ValueError("No configuration file to save to")
        with open(target, 'w') as config_file:
            yaml.dump(self.config, config_file, sort_keys=False)


def parse_suites(value: Any) -> List[str]:
    if value is None or value == 'all':
        return list(SUITE_ORDER)
    if isinstance(value, str):
        value = [s.strip() for s in value.split(',') if s.strip()]
    suites = list(value)
    if 'all' in suites:
        return list(SUITE_ORDER)
    return suites


@dataclass
class RunConfig:
    """
    Effective settings of a verification run.

    Built from defaults, then the YAML file, then command-line flags.
    """
    f: int = 2
    modulus: Optional[str] = None
    m: int = 4
    n_max: int = 3
    samples: int = 500
    charsum_samples: int = 100
    seed: int = 42
    suites: List[str] = field(default_factory=lambda: list(SUITE_ORDER))
    out: str = 'report.json'
    csv: Optional[str] = None
    log_dir: str = '_workLog_dyform'
    workers: int = 1
    show_progress: bool = False
    negative_control: bool = False
    kl_oracle_max_f: int = 5
    kl_max_n: int = 4
    fourier_max_f: int = 6
    exhaustive_max_f: int = 10
    charsum_max_f: int = 4
    matgrp_max_f: int = 2
    injectivity_max_f: int = 4

    @classmethod
    def from_sources(cls, config_manager: Optional[ConfigManager] = None,
                     overrides: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        values: Dict[str, Any] = {}
        if config_manager is not None:
            for key, value in config_manager.config.items():
                if key not in KEY_MAP:
                    raise ValueError(f"Unknown configuration key '{key}'")
                if value is not None and value != 'default':
                    values[KEY_MAP[key]] = value
        names = {f.name for f in fields(cls)}
        for key, value in (overrides or {}).items():
            if key not in names:
                raise ValueError(f"Unknown override '{key}'")
            if value is not None:
                values[key] = value
        if 'suites' in values:
            values['suites'] = parse_suites(values['suites'])
        if values.get('modulus') is not None:
            values['modulus'] = str(values['modulus'])
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        """
        Raises:
            ValueError: on any setting outside its domain
        """
        for name in ('f', 'm', 'n_max', 'workers', 'matgrp_max_f'):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        for name in ('samples', 'charsum_samples'):
            if int(getattr(self, name)) < 0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)}")
        unknown = [s for s in self.suites if s not in SUITE_ORDER]
        if unknown:
            raise ValueError(f"Unknown suites {unknown}; choose from {SUITE_ORDER} or 'all'")
        if self.m < 2 and MATRIX_SUITES.intersection(self.suites):
            raise ValueError(f"Precision m={self.m} is too small for suites "
                             f"{sorted(MATRIX_SUITES.intersection(self.suites))}; need m >= 2")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")

    def ordered_suites(self) -> List[str]:
        return [s for s in SUITE_ORDER if s in self.suites]

    def echo(self) -> Dict[str, Any]:
        """Settings in declaration order, as echoed in the report."""
        return asdict(self)
