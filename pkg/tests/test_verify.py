import pytest

from charmax import config
from charmax.errors import DomainError
from charmax.experiments import SUITES, SuiteResult, run_suite


@pytest.mark.parametrize(
    "name, modulus",
    [
        ("gauss", 101),
        ("gauss", 45),
        ("polya", 101),
        ("orthogonality", 7),
        ("orthogonality", 9),
        ("lfun", 101),
        ("lfun", 20),
        ("bessel", None),
    ],
)
def test_suite_passes(name, modulus):
    result = run_suite(name, modulus=modulus)
    assert result.checks
    assert result.passed, [c.name for c in result.failures()]


def test_dyadic_suite():
    result = run_suite("dyadic", modulus=211, cases=200)
    assert len(result.checks) == 400
    assert result.params["cases"] == 200
    assert result.passed


def test_dyadic_suite_defaults_to_configured_cases():
    assert config.VERIFY_DYADIC_CASES == 1000
    result = run_suite("dyadic", modulus=101)
    assert result.params["cases"] == 1000
    assert len(result.checks) == 2000
    assert result.passed


def test_dyadic_suite_case_count_override(monkeypatch):
    monkeypatch.setattr(config, "VERIFY_DYADIC_CASES", 3)
    assert len(run_suite("dyadic", modulus=31).checks) == 6
    with pytest.raises(DomainError):
        run_suite("dyadic", modulus=31, cases=0)


def test_dyadic_suite_is_reproducible():
    first = run_suite("dyadic", modulus=101, cases=50)
    second = run_suite("dyadic", modulus=101, cases=50)
    assert [c.detail for c in first.checks] == [c.detail for c in second.checks]


@pytest.mark.slow
def test_primesum_suite():
    result = run_suite("primesum")
    assert result.passed
    assert len(result.checks) == 3


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("zeta")


def test_suite_result_bookkeeping():
    result = SuiteResult("demo", {})
    assert not result.passed
    result.add("ok", 0.5, 1.0)
    result.add("bad", 2.0, 1.0, note="x")
    assert not result.passed
    assert [c.name for c in result.failures()] == ["bad"]
    assert result.max_residual == 2.0
    assert result.failures()[0].detail == {"note": "x"}


def test_registry():
    expected = {
        "gauss",
        "polya",
        "dyadic",
        "orthogonality",
        "bessel",
        "primesum",
        "proposition",
        "lfun",
    }
    assert set(SUITES) == expected


def test_proposition_bound_holds_with_fitted_constant():
    result = run_suite("proposition")
    assert result.passed, [c.name for c in result.failures()]
    assert len(result.checks) == 15 * 5
    fitted = result.params["C"]
    assert fitted == max(c.detail["gap"] for c in result.checks if not c.detail["held_out"])
    held_out = [c for c in result.checks if c.detail["held_out"]]
    assert {c.name.split()[0] for c in held_out} == {f"k={k}" for k in range(3, 17, 2)}
    for check in result.checks:
        assert check.detail["gap"] <= fitted + 0.25
