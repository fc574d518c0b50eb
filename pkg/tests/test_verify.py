import pytest

from motivic_hall.verify import SUITES, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_shipped_suite_passes(name):
    report = run_suite(name)
    assert report.entries
    failures = [(e.identity, e.params) for e in report.failures()]
    assert not failures


def test_entries_name_identity_and_parameters():
    report = run_suite("hecke")
    for e in report.entries:
        data = e.to_json()
        assert data["identity"] and data["params"]
