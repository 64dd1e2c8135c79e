import numpy as np
import pytest

from src.core.errors import DimensionMismatch
from src.darboux import build_first_order
from src.expalg import ExpPoly, cosh
from src.matfun import RatMatFun, VecFun
from src.model import ChainEntry, Hamiltonian, IntertwiningOperator, TransformationSet
from src.verify import (PROBE_BASIS_VERSION, Check, VerificationReport, VerificationService,
                        compare_forms, grid_residual, probe_basis, verify_intertwining)


def vec(*entries):
    return VecFun(np.array(entries, dtype=object))


@pytest.fixture
def build():
    tset = TransformationSet(1, [ChainEntry(vec(cosh(1.0)), -1.0, name="ch")])
    return build_first_order(tset)


class TestReport:
    def test_informational_checks_do_not_fail(self):
        report = VerificationReport([Check("a", True), Check("b", False, informational=True)])
        assert report.overall
        assert report.failures() == []
        report.add(Check("c", False, 0.5, "x=1"))
        assert not report.overall
        assert [c.name for c in report.failures()] == ["c"]

    def test_dict_round_trip(self):
        report = VerificationReport([Check("a", True, 1e-14, method="grid"),
                                     Check("b", False, 2.0, "x=0.5")])
        again = VerificationReport.from_dict(report.to_dict())
        assert again.to_json() == report.to_json()
        assert again.get("b").location == "x=0.5"

    def test_changed_checks(self):
        stored = VerificationReport([Check("a", True), Check("b", True), Check("gone", True)])
        fresh = VerificationReport([Check("a", True), Check("b", False), Check("new", True)])
        assert fresh.changed_checks(stored) == ["b", "gone", "new"]
        assert stored.changed_checks(stored) == []


class TestResiduals:
    def test_zero(self):
        assert grid_residual(RatMatFun.zero(2)) == (0.0, None)

    def test_worst_point(self, grid):
        value = vec(ExpPoly.x(2))
        residual, x = grid_residual(value, grid)
        assert residual == pytest.approx(25.0)
        assert abs(x) == pytest.approx(5.0)

    def test_compare_forms_exact_and_grid(self, grid):
        a = vec(cosh(1.0))
        exact = compare_forms("same", a, vec(cosh(1.0)), grid)
        assert exact.exact and exact.method == "exact"
        close = compare_forms("close", a, vec(cosh(1.0) + 1e-13), grid)
        assert close.exact and close.method == "grid"
        far = compare_forms("far", a, vec(cosh(1.0) + 1e-3), grid)
        assert not far.exact


class TestIntertwining:
    def test_wrong_partner_is_localized(self, build, grid):
        wrong = Hamiltonian(1, build.h_minus.potential + RatMatFun.constant([[0.1]]))
        report = verify_intertwining(build.q, build.h_plus, wrong, grid=grid)
        assert not report.get("intertwining.probes").exact
        assert "probe" in report.get("intertwining.probes").location
        assert not report.get("intertwining.operator").exact
        assert not report.get("intertwining.coefficient_identity").exact

    def test_mutated_coefficient(self, build, grid):
        lower = [build.q.lower[0] + RatMatFun.constant([[1e-3]])]
        q = IntertwiningOperator(1, build.q.leading, lower)
        report = verify_intertwining(q, build.h_plus, build.h_minus, grid=grid)
        assert not report.overall

    def test_probe_basis(self):
        assert PROBE_BASIS_VERSION == "1"
        assert len(probe_basis(2)) == 2 * 3 * 7


class TestService:
    def test_run_all_first_order(self, build, settings):
        report = VerificationService(settings).run_all(build)
        assert report.overall, [c.name for c in report.failures()]
        names = {c.name for c in report.checks}
        assert {"kernel.ch", "intertwining.operator", "u0.two_routes", "u0.spectrum_constant",
                "factorization.h_plus", "similarity.covariance"} <= names

    def test_explicit_similarity(self, settings):
        tset = TransformationSet(2, [
            ChainEntry(vec(cosh(1.0), ExpPoly.exp(1.0, 0.5)), -1.0, name="a"),
            ChainEntry(vec(ExpPoly.exp(-2.0, 0.3), cosh(2.0)), -4.0, name="b")])
        coupled = build_first_order(tset)
        verifier = VerificationService(settings)
        assert verifier.similarity_covariance(coupled, [[1.0, 2j], [0.5, 3.0]]).exact
        with pytest.raises(DimensionMismatch):
            verifier.similarity_covariance(coupled, np.eye(3))

    def test_extras_are_informational(self, build, settings):
        report = VerificationService(settings).run_all(build, extras={"exp": vec(ExpPoly.exp(1.0))})
        extra = report.get("kernel.extra.exp")
        assert extra.informational and not extra.exact
        assert report.overall
