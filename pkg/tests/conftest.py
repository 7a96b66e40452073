import math

import hypothesis.strategies as st
import pytest
from hypothesis import settings

settings.register_profile('means', derandomize=True, max_examples=200, deadline=None)
settings.load_profile('means')

# quads of the three discriminant classes used throughout the worked values
NEGATIVE_QUAD = (4.0, 3.0, 2.0, 1.0)
POSITIVE_QUAD = (8.0, 2.0, 2.0, 1.0)
ZERO_QUAD = (4.0, 2.0, 2.0, 1.0)


def positive_floats(lo=1e-3, hi=1e3):
    """Log-uniformly spread positive floats"""
    return st.floats(math.log(lo), math.log(hi)).map(math.exp)


@st.composite
def strict_quads(draw, lo=1e-2, hi=1e2):
    """(a, b, c, d) with a > b >= c > d, separated by at least 0.1% steps"""
    d = draw(positive_floats(lo, hi))
    c = d * (1.0 + draw(st.floats(1e-3, 3.0)))
    b = c if draw(st.booleans()) else c * (1.0 + draw(st.floats(0.0, 3.0)))
    a = b * (1.0 + draw(st.floats(1e-3, 3.0)))
    return a, b, c, d


@st.composite
def separated_pairs(draw, lo=1e-3, hi=1e3):
    b = draw(positive_floats(lo, hi))
    a = b * (1.0 + draw(st.floats(1e-3, 50.0)))
    return a, b


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """No MEANS_* variables leak in from the shell or a .env file"""
    for name in ('MEANS_WORKERS', 'MEANS_ORACLE_DIGITS', 'MEANS_TOLERANCE', 'MEANS_LOG_LEVEL', 'MEANS_SEED'):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr('means_toolkit.config.load_dotenv', lambda *args, **kwargs: False)
