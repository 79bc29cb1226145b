"""
Constants used throughout fairconf
"""
# Method tags
METHOD_SWM = "swm"
METHOD_IAM = "iam"
METHOD_PFAIR = "pfair"
METHOD_SFAIR = "sfair"
METHOD_FAIRCONF = "fairconf"
METHOD_BRUTEFORCE = "bruteforce"

BASELINE_METHODS = (METHOD_SWM, METHOD_IAM, METHOD_PFAIR, METHOD_SFAIR)
SWEEP_METHODS = BASELINE_METHODS + (METHOD_FAIRCONF,)

# Absolute tolerance for metric identities and acceptance comparisons
METRIC_TOLERANCE = 1e-9

# Defaults for SolveConfig
DEFAULT_PRUNE_TOLERANCE = 1e-12
DEFAULT_BRUTEFORCE_CAP = 10_000_000

# Slot pattern grid is a quarter cosine period sampled at pi/30
AVAILABILITY_PATTERN_MAX_SLOTS = 15

# Sizes and splits of the grouped scenarios
GROUPED_SIZES = (10, 10, 15)
BALANCED_SPLIT = 5
IMBALANCED_SPLIT = 7

# Sweep CSV header (exact column order)
CSV_COLUMNS = (
    "method",
    "lambda1",
    "lambda2",
    "tep",
    "ncg_mean",
    "ncg_min",
    "ncg_max",
    "psi_p",
    "nec_mean",
    "nec_min",
    "nec_max",
    "psi_s",
    "objective",
    "optimal",
    "nodes_explored",
    "time_ms",
)

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
