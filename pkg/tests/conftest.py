import pytest

from acidfront.core import ModelParameters
from acidfront.scenarios import preset, run_config


def raw_params(d: float, r: float, D: float, c: float) -> ModelParameters:
    """Build ModelParameters without validation.

    Lets tests switch off reaction terms entirely (r = c = 0 with u = 0),
    which no valid parameter set can express; the scheme itself never
    requires positive rates.
    """
    p = object.__new__(ModelParameters)
    for name, value in dict(d=d, r=r, D=D, c=c).items():
        object.__setattr__(p, name, value)
    return p


@pytest.fixture(scope="session")
def preset_run():
    """Session-cached preset runner: heavy reference runs are shared
    between the acceptance criteria and the scenario tests."""
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = run_config(preset(name))
        return cache[name]

    return get
