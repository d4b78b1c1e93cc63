import pytest

from arfcover.verify import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_at_g1(name):
    verdicts = SUITES[name](1)
    assert verdicts
    assert all(v.passed for v in verdicts), [v for v in verdicts if not v.passed]


@pytest.mark.parametrize("name", ["arf", "orbits", "generators", "cover", "star", "congruence"])
def test_suites_pass_at_g2(name):
    assert all(v.passed for v in SUITES[name](2))


def test_congruence_suite_reports_divergence_at_g1():
    verdicts = SUITES["congruence"](1)
    by_name = {v.name: v.detail for v in verdicts}
    assert by_name["congruent iff equal Arf q=2 section=00"]["general_theta_divergent_pairs"] == 6
    assert by_name["congruent iff equal Arf q=4 section=00"]["general_theta_divergent_pairs"] == 0


def test_run_suite_names_and_range():
    names = [v.name for v in run_suite("all", [1])]
    assert any(n.startswith("fox g=1") for n in names)
    with pytest.raises(KeyError):
        run_suite("nope", [1])
    with pytest.raises(ValueError):
        run_suite("arf", [4])
