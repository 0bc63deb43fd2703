import pytest
from hypothesis import HealthCheck, settings

from epimax import Vocabulary, parse

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def vocab_p():
    return Vocabulary(("p",))


@pytest.fixture
def vocab_pq():
    return Vocabulary(("p", "q"))


@pytest.fixture
def vocab_pqr():
    return Vocabulary(("p", "q", "r"))


@pytest.fixture
def fml():
    """Shorthand: fml(text, vocab) -> Formula."""
    return parse
