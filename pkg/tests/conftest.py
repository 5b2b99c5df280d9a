import pytest

from qha.cache import CountCache

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def shared_cache(tmp_path_factory):
    """Count cache shared by the tests that need Kac polynomials."""
    return CountCache(tmp_path_factory.mktemp("cache") / "counts.jsonl")


@pytest.fixture
def criterion(request):
    """Record the outcome of one numbered acceptance criterion.

    Usage: ``with criterion(3, "description"):`` around the assertions.
    """

    class _Scope:
        def __init__(self, number, title):
            self.number, self.title = number, title

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            status = "PASS" if exc_type is None else "FAIL"
            ACCEPTANCE[self.number] = (status, self.title if exc is None else f"{self.title}: {exc}")
            return False

    return _Scope


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"{status} criterion {k}: {text.splitlines()[0][:160]}")
