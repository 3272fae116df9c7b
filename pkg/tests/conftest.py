import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tricomi_lab.exponents import ModelParams
from tricomi_lab.solver import SolverConfig, run_model


@pytest.fixture(scope="session")
def blowup_traj_m1():
    """Subcritical m=1, p=1.5 run with moderate positive data: blows up."""
    params = ModelParams(1, 3, 1.5, M=1.0, amplitude=5.0)
    cfg = SolverConfig(params=params, sigma=1, t_max=20.0, cells=512, n_out=201)
    return run_model(cfg)


@pytest.fixture(scope="session")
def survival_traj_m1():
    """Supercritical m=1, p=3 run with small data: survives and decays."""
    params = ModelParams(1, 3, 3.0, M=1.0, amplitude=1e-3)
    cfg = SolverConfig(params=params, sigma=1, t_max=20.0, cells=512, n_out=201)
    return run_model(cfg)
