import os
import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from _helpers import DEFAULT_SEED  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60, print_blob=True)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=None, help="seed for randomized property tests")


def pytest_configure(config):
    seed = config.getoption("--seed")
    if seed is not None:
        os.environ["COMPGRAPH_TEST_SEED"] = str(seed)
    os.environ.setdefault("COMPGRAPH_TEST_SEED", str(DEFAULT_SEED))


def pytest_report_header(config):
    return f"property-test seed: {os.environ.get('COMPGRAPH_TEST_SEED')}"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
