"""Shared fixtures for the test suite."""

from pathlib import Path

import pytest

from entsum import Lexicons, load_corpus

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# human-readable labels for the acceptance checks, one line each in the
# terminal summary so a run can be audited at a glance
_ACCEPTANCE_LABELS = {
    "test_keyphrase_segmentation_worked_example": "keyphrase segmentation worked example (< 1 ms)",
    "test_keyword_scores_match_bruteforce_oracle": "keyword scoring equals brute-force co-occurrence oracle",
    "test_graph_connectivity_conservation": "graph connectivity conservation",
    "test_rouge1_worked_example_and_symmetry": "rouge-1 worked example and symmetry",
    "test_weighted_average_reference_values": "weighted average reference values (+/- 0.0001)",
    "test_selection_size_order_and_monotonicity": "selection size, order, and ratio monotonicity",
    "test_variant_relationships_and_determinism": "variant relationships and determinism",
    "test_golden_summaries_byte_exact": "golden summaries byte-exact",
}


@pytest.fixture(scope="session")
def lexicons():
    return Lexicons.bundled()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(CORPUS_DIR)


def _acceptance_name(nodeid):
    if "test_acceptance.py" not in nodeid:
        return None
    name = nodeid.split("::")[-1]
    # strip parametrization suffixes
    name = name.split("[")[0]
    return name if name in _ACCEPTANCE_LABELS else None


def pytest_terminal_summary(terminalreporter):
    seen = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, ()):
            name = _acceptance_name(getattr(report, "nodeid", ""))
            if name is None:
                continue
            ok = outcome == "passed"
            seen[name] = seen.get(name, True) and ok
    if not seen:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, label in _ACCEPTANCE_LABELS.items():
        if name not in seen:
            continue
        verdict = "PASS" if seen[name] else "FAIL"
        terminalreporter.write_line(f"  {verdict}  {label}")
