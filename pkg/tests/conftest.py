import pytest

from event_system import EventBusSingleton


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: experiment reproductions on MovieLens 100k")


@pytest.fixture(autouse=True)
def clean_event_bus():
    EventBusSingleton.reset()
    yield
    EventBusSingleton.reset()
