from .base_experiment import Experiment
from .round_trip import RoundTripSuite, SuiteResult
