import pytest
from hypothesis import settings

from zielonka_cts.switching import single_system

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def fix1():
    """The three-process single-switching system."""
    return single_system(3)
