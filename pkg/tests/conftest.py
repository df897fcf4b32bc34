import pytest

from doubled_odd.checks import CheckContext

_contexts: dict[int, CheckContext] = {}


@pytest.fixture(scope="session")
def ctx_for():
    """Shared per-m construction contexts so expensive builds happen once."""

    def get(m: int) -> CheckContext:
        if m not in _contexts:
            _contexts[m] = CheckContext(m)
        return _contexts[m]

    return get
