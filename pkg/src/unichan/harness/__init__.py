from .bounds import BoundReport, check_params, check_rate_bound
from .experiment import DEFAULT_SEED, ConfigError, ExperimentSpec, TrialReport, run_attack, run_experiment
from .stats import wilson
from .sweep import COLUMNS, sweep, sweep_rows
