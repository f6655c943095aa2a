from orbit_isom.verification import SUITE_IDS, run_suites


def test_suite_ids_ordered():
    assert len(SUITE_IDS) == 9
    assert [s.split("-")[0] for s in SUITE_IDS] == [str(i) for i in range(1, 10)]


def test_filter_returns_empty_on_no_match():
    assert run_suites("zzz") == []


def test_filter_substring(memo):
    results = run_suites("hopf", memo=memo)
    assert [r.suite_id for r in results] == [
        "1-hopf-pipeline", "2-hopf-metric", "3-hopf-lift"]


def test_results_carry_details(memo):
    (result,) = run_suites("5-", memo=memo)
    assert result.passed
    assert result.details
    assert result.suite_id == "5-irreducible-trichotomy"
