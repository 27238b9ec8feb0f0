from pathlib import Path

import pytest
from hypothesis import settings

from wosnet.ingest import Corpus, parse_export

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"
FIXTURE = DATA / "fixture_wos.txt"


@pytest.fixture
def fixture_bytes() -> bytes:
    return FIXTURE.read_bytes()


@pytest.fixture
def fixture_corpus(fixture_bytes) -> Corpus:
    records, warnings = parse_export(fixture_bytes, source=FIXTURE.name)
    assert warnings == []
    return Corpus(tuple(records), (f"file:{FIXTURE.name}",))


def wos_block(**fields) -> str:
    """Render one record block from keyword arguments, e.g. ``DE="a; b"``."""
    lines = [f"{tag} {value}" for tag, value in fields.items()]
    return "\n".join(lines + ["ER", ""]) + "\n"


# --- acceptance summary ---------------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties += [("criterion", mark.args[0]), ("title", mark.args[1])]


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "FAIL"
        _acceptance[props["criterion"]] = (status, props["title"])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        status, title = _acceptance[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
