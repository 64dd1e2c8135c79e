# Bundled scenario providers
from .custom import CustomScenario
from .s51 import TwoEnergyScenario
from .s52 import DoubleEigenScenario
from .s53 import JordanPairScenario
