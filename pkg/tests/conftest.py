from functools import lru_cache

import pytest

from cyclocwe.field import build_field


@lru_cache(maxsize=None)
def _field(p, m, poly=None):
    return build_field(p, m, poly)


@pytest.fixture(scope="session")
def field():
    """Factory returning cached field contexts: ``field(p, m)``."""
    return _field


ACCEPTANCE_LABELS = {
    "test_criterion_1_golden_examples": "1 golden CWE reproduction",
    "test_criterion_2_oracle_grid": "2 oracle equals closed form",
    "test_criterion_3_s_distributions": "3 S(a) distributions",
    "test_criterion_4_t_distributions": "4 T(a,b) distributions",
    "test_criterion_5_gauss_sums": "5 Gauss-sum identity",
    "test_criterion_6_quadratic_identity": "6 quadratic character-sum identity",
    "test_criterion_7_rank_census": "7 rank census",
    "test_criterion_8_properties": "8 property suite",
    "test_criterion_9_typo_adjudication": "9 sign repair adjudication",
}


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.when != "call" and status == "passed":
                continue
            name = rep.nodeid.split("::")[-1]
            if "test_acceptance.py" in rep.nodeid and name in ACCEPTANCE_LABELS:
                outcomes[name] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in ACCEPTANCE_LABELS.items():
        if name in outcomes:
            terminalreporter.write_line(f"{outcomes[name]}  criterion {label}")
