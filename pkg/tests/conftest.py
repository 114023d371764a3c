import numpy as np
import pytest

from ltg import EmbeddingTable, UnitVectorSequence


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Print one PASS/FAIL line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if "test_acceptance" not in str(item.fspath):
        return
    skipped_at_setup = report.when == "setup" and report.skipped
    if report.when != "call" and not skipped_at_setup:
        return
    label = (item.function.__doc__ or item.name).strip().splitlines()[0]
    status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(
        report.outcome, report.outcome.upper()
    )
    terminal = item.config.pluginmanager.get_plugin("terminalreporter")
    if terminal is not None:
        terminal.write_line(f"[{status}] {label}")


def scalar_sequence(values) -> UnitVectorSequence:
    """Wrap a 1-D array of +-1 (or any unit scalars) as a (N, 1) sequence."""
    return UnitVectorSequence(np.asarray(values, dtype=np.float64)[:, None])


def random_unit_sequence(rng, n, d) -> UnitVectorSequence:
    v = rng.standard_normal((n, d))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return UnitVectorSequence(v)


@pytest.fixture(scope="session")
def toy_table() -> EmbeddingTable:
    """30 words in 8 dimensions with a shared positive component.

    The shared component keeps average pairwise cosines positive, the
    way real pretrained word vectors behave, so random word salad still
    produces a mostly-positive autocorrelation curve.
    """
    rng = np.random.default_rng(1234)
    words = [f"w{i:02d}" for i in range(30)]
    matrix = 0.35 + 0.3 * rng.standard_normal((30, 8))
    return EmbeddingTable("toy-8d", words, matrix)


@pytest.fixture
def toy_embeddings_file(tmp_path, toy_table):
    """The toy table serialized in the plain-text embedding format."""
    lines = []
    for word in (f"w{i:02d}" for i in range(len(toy_table))):
        vec = toy_table.vector(word)
        lines.append(word + " " + " ".join(repr(float(x)) for x in vec))
    path = tmp_path / "toy.vec"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
