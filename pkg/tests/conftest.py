import sys
from pathlib import Path
import numpy as np # type: ignore
import pytest # type: ignore

sys.path.append(str(Path(__file__).resolve().parent.parent))

from utils.arithmetic_utils.gf2_utils import make_field # type: ignore
from utils.arithmetic_utils.dring_utils import make_ring # type: ignore
from utils.configHandling_utils.config_utils import RunConfig # type: ignore


@pytest.fixture
def gf2():
    return make_field(1)


@pytest.fixture
def gf4():
    return make_field(2)


@pytest.fixture
def gf8():
    return make_field(3)


@pytest.fixture
def ring4(gf4):
    """GR(16, 2), the default working ring."""
    return make_ring(gf4, 4)


@pytest.fixture
def ring8_3(gf8):
    return make_ring(gf8, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def small_config(tmp_path):
    """A run small enough for unit tests, writing into tmp_path."""
    return RunConfig(f=1, m=3, n_max=1, samples=5, charsum_samples=3, seed=7,
                     out=str(tmp_path / 'report.json'), log_dir=str(tmp_path / 'logs'),
                     kl_oracle_max_f=2, kl_max_n=2, fourier_max_f=2, exhaustive_max_f=3,
                     charsum_max_f=1, injectivity_max_f=2, matgrp_max_f=1)
