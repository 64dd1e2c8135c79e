import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import ConstraintViolated, UnclassifiedConstants, UnknownScenario
from src.darboux import factorization_report
from src.matfun import RatMatFun
from src.model import potential_from_set
from src.scenarios import PRESETS, REPRODUCE_PRESETS, GridSpec, ScenarioConfig
from src.scenarios.oracles import s51_case, s51_case_x0, s52_is_square
from src.scenarios.truth_tables import TABLES
from src.verify import VerificationService
from tests.conftest import K1, X0
from tests.unit.test_artifacts import CUSTOM_WELL


def branches(scenario_id):
    return [(scenario_id, case.branch) for case in TABLES[scenario_id]()]


ALL_BRANCHES = branches("s51") + branches("s52") + branches("s53")


class TestConfigValidation:
    def test_c5_fixed_for_one_energy(self):
        with pytest.raises(ValidationError, match="fixes C5 = 0"):
            ScenarioConfig(id="s52", constants={"k": 1.0, "C5": 0.3})
        assert ScenarioConfig(id="s52", constants={"k": 1.0, "C5": 0.0}).c(5) == 0

    def test_s51_needs_distinct_energies(self):
        with pytest.raises(ValidationError, match="lambda1 != lambda2"):
            ScenarioConfig(id="s51", constants={"k1": 1.0, "k2": -1.0})

    def test_derived_names_rejected(self):
        with pytest.raises(ValidationError, match="derived"):
            ScenarioConfig(id="s53", constants={"k": 1.0, "Delta1": 0.2})

    def test_c1_only_one(self):
        assert ScenarioConfig(id="s52", constants={"k": 1.0, "C1": 1.0}).c(1) == 1
        with pytest.raises(ValidationError, match="C1 is fixed"):
            ScenarioConfig(id="s52", constants={"k": 1.0, "C1": 2.0})

    def test_complex_pairs_and_strings(self):
        cfg = ScenarioConfig(id="s52", constants={"k": [1.0, 0.5], "C2": "0.3+0.1j"})
        assert cfg.k == complex(1.0, 0.5)
        assert cfg.c(2) == complex(0.3, 0.1)

    def test_grid_order(self):
        with pytest.raises(ValidationError):
            GridSpec(xmin=1.0, xmax=-1.0)

    def test_service_maps_to_constraint_violation(self, service):
        with pytest.raises(ConstraintViolated):
            service.config("s52", {"k": 0.0})

    def test_similarity_shape(self):
        with pytest.raises(ValidationError, match="n x n"):
            ScenarioConfig.model_validate({**CUSTOM_WELL, "similarity": [[1.0, 0.0], [0.0, 1.0]]})
        with pytest.raises(ValidationError, match="nondegenerate"):
            ScenarioConfig(id="s52", constants={"k": 1.0}, similarity=[[1.0, 2.0], [2.0, 4.0]])

    def test_derived_constants(self):
        cfg = ScenarioConfig(id="s51", constants={"k1": 1.0, "k2": 0.5, "C2": 0.5, "C3": 0.2,
                                                  "C4": 0.3, "C5": 0.1, "C6": 0.4, "C7": 0.6,
                                                  "C8": 0.9})
        assert cfg.delta1 == pytest.approx(0.3 - 0.1)
        assert cfg.delta2 == pytest.approx(0.09 - 0.24)
        assert cfg.d28 == pytest.approx(0.45 - 0.12)
        assert np.allclose(cfg.m1 @ cfg.m1, 0)


class TestPresets:
    def test_s51_case1(self, s51_case1):
        assert s51_case(s51_case1) == "case1"
        assert s51_case_x0(s51_case1) == pytest.approx(X0)
        assert s51_case1.k1 == K1

    @pytest.mark.parametrize("name,case", [("s51-case2", "case2"), ("s51-case3", "case3"),
                                           ("s51-case4", "case4"), ("s51-generic", None)])
    def test_s51_families(self, service, name, case):
        assert s51_case(service.preset(name)) == case

    def test_square_preset(self, service):
        assert s52_is_square(service.preset("s52-square"))
        assert not s52_is_square(service.preset("s52-c6zero"))

    def test_unknown_preset(self, service):
        with pytest.raises(UnknownScenario):
            service.preset("s54-generic")

    def test_bad_override(self, service):
        with pytest.raises(ConstraintViolated):
            service.preset("s52-generic", k1=2.0)

    def test_reproduce_lists_known_presets(self):
        for names in REPRODUCE_PRESETS.values():
            assert set(names) <= set(PRESETS)


class TestTruthTables:
    def test_unknown_branch(self, service, rng):
        with pytest.raises(UnknownScenario):
            service.sample_config("s52", "9z", rng)

    def test_unclassified(self, service):
        cfg = service.config("s52", {"k": 1.0})
        with pytest.raises(UnclassifiedConstants):
            service.get_provider("s52").expected_bound_states(cfg)

    @pytest.mark.slow
    @pytest.mark.parametrize("scenario_id,branch", ALL_BRANCHES)
    def test_sampled_constants_land_in_branch(self, service, rng, scenario_id, branch):
        cfg = service.sample_config(scenario_id, branch, rng)
        expected = service.get_provider(scenario_id).expected_bound_states(cfg)
        assert expected.branch == branch
        assert not expected.overlaps


class TestPipeline:
    @pytest.mark.slow
    def test_s51_case1_verifies(self, service, s51_case1):
        run = service.build(s51_case1)
        report = service.verify(run)
        assert report.overall, [c.name for c in report.failures()]
        assert report.get("oracle.Vminus").exact

    @pytest.mark.slow
    def test_s52_u0_is_constant(self, service, s52_generic, grid):
        run = service.build(s52_generic)
        u0 = run.build.u0.evaluate(grid)
        assert np.allclose(u0[0, 0], -1.0) and np.allclose(u0[1, 1], -1.0)
        assert np.allclose(u0[0, 1], 0.0) and np.allclose(u0[1, 0], 0.0)

    @pytest.mark.slow
    def test_s53_census(self, service, s53_generic):
        census = service.census(service.build(s53_generic))
        assert census.matches, census.to_dict()
        assert census.expected.branch == "1"

    @pytest.mark.slow
    def test_s51_case1_u0_exact(self, service, s51_case1):
        u0 = service.build(s51_case1).build.u0
        assert u0.is_constant()
        assert np.allclose(u0.constant_value(), np.diag([-K1 ** 2, -4.0]))

    @pytest.mark.slow
    def test_s52_draws(self, service, rng):
        for _ in range(5):
            cfg = service.sample_config("s52", "1", rng)
            build = service.build(cfg).build
            assert (build.u0 + RatMatFun.identity(2) * cfg.k ** 2).is_zero()
            assert factorization_report(build).reverse_intertwining

    def test_configured_similarity_is_applied(self, service, mocker):
        cfg = ScenarioConfig.model_validate({**CUSTOM_WELL, "similarity": [[2.0]]})
        spy = mocker.spy(VerificationService, "similarity_covariance")
        report = service.verify(service.build(cfg))
        assert report.get("similarity.covariance").exact
        assert np.allclose(spy.call_args.args[2], [[2.0]])

    @pytest.mark.parametrize("name", ["s51-generic", "s52-generic", "s53-generic"])
    def test_inverse_problem_recovers_free(self, service, name):
        cfg = service.preset(name)
        tset = service.get_provider(cfg.id).transformation_set(cfg)
        assert potential_from_set(tset).is_free()
