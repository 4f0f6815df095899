import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import sharpestudio as ss
from sharpestudio.core.report import build_report
from sharpestudio.errors import DomainError, UnreachableConfidenceError
from sharpestudio.significance import (
    DEFAULT_REPORT_TESTS,
    critical_statistic,
    evaluate,
    luck_p_value,
    make_spec,
    min_sharpe,
    resolve_test,
    round_trip_consistency,
    skill,
    studentized_statistic,
    test_registry,
)
from sharpestudio.significance.base import SignificanceTest, Tail, TestKind
from sharpestudio.significance.wald import WaldModifiedTest
from sharpestudio.special import normal_inv, normal_sf, t_inv

ALL_TESTS = list(TestKind)
TWO_TAILED_STUDENT_FAMILY = [TestKind.STUDENT_TWO_TAILED, TestKind.FISHER, TestKind.BETA]


def daily(test: TestKind, n: int = 250, rho: float = 0.0, **kwargs):
    return make_spec(test, n, 252.0, rho, **kwargs)


class TestSpecs:
    def test_delta_and_dof(self):
        spec = make_spec(TestKind.FISHER, 24, 12.0, 0.3)
        assert spec.dof == 23.0
        assert spec.delta > 1.0
        assert spec.tail is Tail.TWO

    @pytest.mark.parametrize(
        "fields",
        [
            {"n": 1, "periods_per_year": 252.0, "rho": 0.0},
            {"n": 10, "periods_per_year": 0.0, "rho": 0.0},
            {"n": 10, "periods_per_year": 252.0, "rho": 1.0},
        ],
    )
    def test_invalid_specs_raise_domain_errors(self, fields):
        with pytest.raises(DomainError):
            make_spec(TestKind.STUDENT_TWO_TAILED, **fields)

    def test_unknown_test(self):
        with pytest.raises(DomainError):
            make_spec("bootstrap", 10, 252.0)


class TestResolve:
    @pytest.mark.parametrize(
        ("family", "tail", "expected"),
        [
            ("student", "one", TestKind.STUDENT_ONE_TAILED),
            ("student", "two", TestKind.STUDENT_TWO_TAILED),
            ("Student", "two", TestKind.STUDENT_TWO_TAILED),
            ("wald", "two", TestKind.WALD_STUDENTIZED),
            ("wald-raw", "two", TestKind.WALD_RAW),
            ("wald-modified", "two", TestKind.WALD_MODIFIED),
            ("fisher", "two", TestKind.FISHER),
            ("beta", "two", TestKind.BETA),
        ],
    )
    def test_known(self, family, tail, expected):
        assert resolve_test(family, tail) is expected

    @pytest.mark.parametrize(("family", "tail"), [("fisher", "one"), ("wald", "one"), ("anova", "two"), ("student", "three")])
    def test_unknown(self, family, tail):
        with pytest.raises(DomainError):
            resolve_test(family, tail)


class TestLuck:
    def test_studentized_statistic(self):
        spec = make_spec(TestKind.STUDENT_TWO_TAILED, 24, 12.0, 0.3)
        expected = 0.8 * math.sqrt(24) * spec.delta / math.sqrt(12.0)
        assert studentized_statistic(0.8, spec) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("test", ALL_TESTS)
    def test_probabilities(self, test):
        result = evaluate(1.1, daily(test))
        assert 0.0 <= result.luck <= 1.0
        assert result.luck + result.skill == pytest.approx(1.0, abs=1e-15)

    def test_zero_sharpe(self):
        assert luck_p_value(0.0, daily(TestKind.STUDENT_TWO_TAILED)) == pytest.approx(1.0)
        assert luck_p_value(0.0, daily(TestKind.STUDENT_ONE_TAILED)) == pytest.approx(0.5)

    def test_negative_sharpe_one_tailed(self):
        assert luck_p_value(-0.5, daily(TestKind.STUDENT_ONE_TAILED)) > 0.5

    @given(sr=st.floats(min_value=0.0, max_value=6.0))
    def test_two_tailed_doubles_one_tailed(self, sr):
        one = luck_p_value(sr, daily(TestKind.STUDENT_ONE_TAILED))
        two = luck_p_value(sr, daily(TestKind.STUDENT_TWO_TAILED))
        assert two == pytest.approx(2.0 * one, rel=1e-12, abs=1e-300)

    @given(sr=st.floats(min_value=-6.0, max_value=6.0), rho=st.floats(min_value=-0.8, max_value=0.8))
    def test_fisher_and_beta_agree_with_two_tailed_student(self, sr, rho):
        reference = luck_p_value(sr, daily(TestKind.STUDENT_TWO_TAILED, rho=rho))
        for test in (TestKind.FISHER, TestKind.BETA):
            assert luck_p_value(sr, daily(test, rho=rho)) == pytest.approx(reference, rel=1e-9, abs=1e-14)

    @pytest.mark.parametrize("sr", [1e-8, -1e-8, 1e-12, 3e-6])
    def test_beta_keeps_precision_for_tiny_sharpe(self, sr):
        reference = luck_p_value(sr, daily(TestKind.STUDENT_TWO_TAILED))
        beta = luck_p_value(sr, daily(TestKind.BETA))
        assert reference < 1.0
        assert beta == pytest.approx(reference, rel=1e-12, abs=0.0)

    def test_positive_autocorrelation_raises_skill(self):
        sr = 1.2
        assert skill(sr, daily(TestKind.WALD_STUDENTIZED, rho=0.3)) > skill(sr, daily(TestKind.WALD_STUDENTIZED))
        assert skill(sr, daily(TestKind.WALD_STUDENTIZED, rho=-0.3)) < skill(sr, daily(TestKind.WALD_STUDENTIZED))

    def test_raw_wald_ignores_autocorrelation(self):
        assert luck_p_value(1.2, daily(TestKind.WALD_RAW, rho=0.5)) == luck_p_value(1.2, daily(TestKind.WALD_RAW))

    def test_analyze_example(self):
        # a 250-day record with an annualized Sharpe of 1.65 sits at the 90% Wald threshold
        assert skill(1.65, daily(TestKind.WALD_STUDENTIZED)) == pytest.approx(0.90, abs=0.001)


class TestMinSharpe:
    @pytest.mark.parametrize(
        ("test", "n", "periods", "rho", "confidence", "expected"),
        [
            (TestKind.WALD_STUDENTIZED, 250, 252.0, 0.0, 0.90, 1.65),
            (TestKind.WALD_STUDENTIZED, 250, 252.0, 0.3, 0.90, 1.21),
            (TestKind.WALD_STUDENTIZED, 250, 252.0, -0.3, 0.90, 2.25),
            (TestKind.WALD_STUDENTIZED, 24, 12.0, 0.3, 0.90, 0.88),
            (TestKind.STUDENT_ONE_TAILED, 500, 252.0, 0.0, 0.90, 0.91),
            (TestKind.STUDENT_TWO_TAILED, 500, 252.0, 0.0, 0.90, 1.17),
            (TestKind.STUDENT_ONE_TAILED, 12, 12.0, 0.0, 0.90, 1.36),
            (TestKind.WALD_STUDENTIZED, 250, 252.0, 0.0, 0.95, 1.97),
        ],
    )
    def test_reference_values(self, test, n, periods, rho, confidence, expected):
        value = min_sharpe(make_spec(test, n, periods, rho), confidence)
        assert value == pytest.approx(expected, abs=0.005 + 1e-9)

    def test_closed_forms(self):
        spec = daily(TestKind.STUDENT_ONE_TAILED, n=500)
        assert min_sharpe(spec, 0.9) == pytest.approx(math.sqrt(252.0 / 500.0) * t_inv(0.9, 499.0), rel=1e-14)
        raw = daily(TestKind.WALD_RAW, n=100, rho=0.4)
        assert min_sharpe(raw, 0.5) == pytest.approx(math.sqrt(252.0 / 100.0) * normal_inv(0.75), rel=1e-14)

    def test_beta_matches_two_tailed_student(self):
        for n in (6, 25, 250, 1000):
            assert min_sharpe(daily(TestKind.BETA, n=n), 0.95) == min_sharpe(daily(TestKind.STUDENT_TWO_TAILED, n=n), 0.95)

    def test_one_tailed_needs_less_than_two_tailed(self):
        assert min_sharpe(daily(TestKind.STUDENT_ONE_TAILED), 0.9) < min_sharpe(daily(TestKind.STUDENT_TWO_TAILED), 0.9)

    @pytest.mark.parametrize("confidence", [0.0, 1.0, -0.2, 1.3])
    def test_confidence_domain(self, confidence):
        with pytest.raises(DomainError):
            min_sharpe(daily(TestKind.STUDENT_TWO_TAILED), confidence)

    def test_modified_wald_unreachable(self):
        spec = make_spec(TestKind.WALD_MODIFIED, 5, 12.0)
        with pytest.raises(UnreachableConfidenceError):
            min_sharpe(spec, 0.999)
        with pytest.raises(DomainError):
            min_sharpe(spec, 0.999)

    def test_modified_wald_curvature(self):
        default = test_registry.create(make_spec(TestKind.WALD_MODIFIED, 101, 12.0))
        strict = test_registry.create(make_spec(TestKind.WALD_MODIFIED, 101, 12.0, printed_modified=True))
        assert isinstance(default, WaldModifiedTest)
        assert default.correction == pytest.approx(1.0 - 1.0 / 400.0)
        assert default.curvature == pytest.approx(1.0 / 200.0)
        assert strict.curvature == pytest.approx(12.0 / 200.0)

    def test_modified_wald_is_close_to_student_for_large_n(self):
        modified = min_sharpe(daily(TestKind.WALD_MODIFIED, n=1000), 0.9)
        student = min_sharpe(daily(TestKind.STUDENT_TWO_TAILED, n=1000), 0.9)
        assert modified == pytest.approx(student, rel=1e-3)

    def test_round_trip_grid(self):
        rng = np.random.default_rng(500)
        checked = 0
        for _ in range(500):
            test = ALL_TESTS[int(rng.integers(len(ALL_TESTS)))]
            spec = make_spec(
                test,
                int(rng.integers(5, 2000)),
                float(rng.choice([1.0, 4.0, 12.0, 52.0, 252.0, rng.uniform(1.0, 400.0)])),
                float(rng.uniform(-0.9, 0.9)),
            )
            confidence = float(rng.uniform(0.5, 0.999))
            try:
                check = round_trip_consistency(spec, confidence)
            except UnreachableConfidenceError:
                assert test is TestKind.WALD_MODIFIED
                continue
            assert check.holds(1e-10), (spec, confidence, check.error)
            checked += 1
        assert checked > 400

    @pytest.mark.parametrize("tail_probability", [0.04745074340502797, 0.0876, 0.0704])
    def test_normal_quantiles_that_alternate_between_neighbours(self, tail_probability):
        spec = daily(TestKind.WALD_STUDENTIZED, n=252)
        check = round_trip_consistency(spec, 1.0 - 2.0 * tail_probability)
        assert check.holds(1e-10)
        assert critical_statistic(spec, 2.0 * tail_probability) == pytest.approx(-normal_inv(tail_probability), rel=1e-12)


class TestRejection:
    @pytest.mark.parametrize("test", ALL_TESTS)
    @pytest.mark.parametrize("alpha", [0.01, 0.05, 0.1])
    def test_threshold_matches_min_sharpe(self, test, alpha):
        spec = daily(test, n=120, rho=0.2)
        bound = min_sharpe(spec, 1.0 - alpha)
        implementation = test_registry.create(spec)
        decisions = implementation.rejects(np.array([bound * (1 - 1e-9), bound * (1 + 1e-9)]), alpha)
        assert decisions.tolist() == [False, True]

    def test_two_tailed_rejects_large_negative_sharpe(self):
        implementation = test_registry.create(daily(TestKind.STUDENT_TWO_TAILED))
        assert implementation.rejects(np.array([-5.0]), 0.05).tolist() == [True]
        one_tailed = test_registry.create(daily(TestKind.STUDENT_ONE_TAILED))
        assert one_tailed.rejects(np.array([-5.0]), 0.05).tolist() == [False]

    def test_alpha_edges(self):
        implementation = test_registry.create(daily(TestKind.STUDENT_ONE_TAILED))
        sharpes = np.array([-3.0, 0.5, 3.0])
        assert implementation.rejects(sharpes, 1.0).all()
        assert not implementation.rejects(sharpes, 0.0).any()

    def test_per_path_delta(self):
        implementation = test_registry.create(daily(TestKind.WALD_STUDENTIZED))
        sharpes = np.array([1.4, 1.4])
        deltas = np.array([1.0, 1.5])
        assert implementation.rejects(sharpes, 0.10, deltas).tolist() == [False, True]

    def test_critical_statistic(self):
        assert critical_statistic(daily(TestKind.WALD_RAW), 0.05) == pytest.approx(normal_inv(0.975))
        fisher = critical_statistic(daily(TestKind.FISHER), 0.05)
        assert fisher == pytest.approx(t_inv(0.975, 249.0) ** 2)
        beta = critical_statistic(daily(TestKind.BETA), 0.05)
        assert beta == pytest.approx(249.0 / (249.0 + fisher))


class OneTailedWald(SignificanceTest):
    kind = "wald-one-tailed"
    tail = Tail.ONE
    description = "Wald, one-tailed"

    def statistic(self, sr_annual, delta=None):
        return self.studentized(sr_annual, delta)

    def luck(self, sr_annual: float) -> float:
        return normal_sf(self.studentized(sr_annual))

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        return self.scale * normal_inv(confidence)

    def critical_statistic(self, alpha: float) -> float:
        return normal_inv(1.0 - alpha)


@pytest.fixture
def one_tailed_wald():
    ss.register_test(OneTailedWald.kind, OneTailedWald)
    try:
        yield OneTailedWald
    finally:
        test_registry.unregister(OneTailedWald.kind)


class TestRegistry:
    def test_defaults(self):
        available = test_registry.list_available()
        assert set(available) == {kind.value for kind in TestKind}
        assert set(DEFAULT_REPORT_TESTS) == set(TestKind) - {TestKind.BETA}

    def test_unknown(self):
        with pytest.raises(DomainError):
            test_registry.get("bootstrap")

    def test_register_requires_subclass(self):
        with pytest.raises(DomainError):
            test_registry.register(TestKind.FISHER, object)

    def test_register_replacement(self):
        original = test_registry.get(TestKind.WALD_RAW)

        class HalfLuck(original):
            def luck(self, sr_annual: float) -> float:
                return 0.5

        try:
            test_registry.register(TestKind.WALD_RAW, HalfLuck)
            assert luck_p_value(3.0, daily(TestKind.WALD_RAW)) == 0.5
            assert issubclass(test_registry.get("wald-raw"), SignificanceTest)
        finally:
            test_registry.register(TestKind.WALD_RAW, original)

    def test_register_new_test(self, one_tailed_wald, white_noise_series):
        assert "wald-one-tailed" in test_registry.list_available()
        spec = daily("wald-one-tailed")
        assert spec.test == "wald-one-tailed"
        assert spec.tail is Tail.ONE
        assert resolve_test("wald-one-tailed", "one") == "wald-one-tailed"
        with pytest.raises(DomainError):
            resolve_test("wald-one-tailed", "two")

        two_tailed = luck_p_value(1.2, daily(TestKind.WALD_STUDENTIZED))
        assert luck_p_value(1.2, spec) == pytest.approx(0.5 * two_tailed, rel=1e-12)
        assert round_trip_consistency(spec, 0.9).holds(1e-10)
        assert evaluate(1.2, spec).test == "wald-one-tailed"
        assert ss.skill(1.2, "wald-one-tailed", n=250, periods_per_year=252, tail="one") == pytest.approx(1.0 - 0.5 * two_tailed)

        report = build_report(white_noise_series, rho=0.0, tests=["wald-one-tailed", TestKind.WALD_STUDENTIZED])
        one, two = report.tests
        assert one.test == "wald-one-tailed"
        assert two.test is TestKind.WALD_STUDENTIZED
        if one.statistic > 0:
            assert one.luck == pytest.approx(0.5 * two.luck, rel=1e-9)

        assert OneTailedWald(spec).rejects(np.array([-5.0, 0.0, 5.0]), 0.05).tolist() == [False, False, True]

    def test_unknown_name_is_a_domain_error(self):
        with pytest.raises(DomainError):
            make_spec("bootstrap", 100, 252.0)

    def test_builtin_tests_cannot_be_removed(self):
        with pytest.raises(DomainError):
            test_registry.unregister(TestKind.FISHER)
        with pytest.raises(DomainError):
            test_registry.unregister("bootstrap")
