# Bundled reproductions and custom transformation sets
from .base import Scenario
from .models import (BoundStateCensus, CustomSpec, DependenceRelation, ExpectedBoundStates,
                     GridSpec, Instantiation, ScenarioConfig, ScenarioRun, SimilarityReduction,
                     TruthTableCase)
from .service import PRESETS, REPRODUCE_PRESETS, ScenarioService
