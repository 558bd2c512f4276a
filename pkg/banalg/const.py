"""Constants for the banalg workbench."""

DOMAIN = "banalg"

# Randomness
DEFAULT_SEED = 0xC0FFEE

# Tolerances. Decision and verification thresholds are scaled by
# (1 + max|c|) of the algebra at hand, see ``utils.linalg.scaled_tol``.
DEFAULT_TOL = 1e-8
ASSOCIATIVITY_TOL = 1e-10
IDEAL_TOL = 1e-9
HOMOMORPHISM_TOL = 1e-9
RANK_TOL = 1e-10
INDEPENDENCE_RANK_TOL = 1e-8
DEDUPE_THRESHOLD = 1e-6
ORACLE_MATCH_TOL = 1e-6

# Character solver
SOLVER_MAX_RETRIES = 5
SOLVER_NEWTON_STEPS = 3
SOLVER_CLUSTER_TOL = 1e-4
SOLVER_SPLIT_ATTEMPTS = 8

# Newton-multistart oracle
ORACLE_STARTS = 200
ORACLE_MAX_DIM = 4

# Labels
ZERO_LABEL = "zero"
CHARACTER_LABEL_PREFIX = "phi_"
UNIT_LABEL = "1"

# Decisions and conventions
DECISION_YES = "yes"
DECISION_NO = "no"
CONVENTION_LEFT = "left"
CONVENTION_RIGHT = "right"
DEFAULT_CONVENTION = CONVENTION_LEFT
CONVENTIONS = (CONVENTION_LEFT, CONVENTION_RIGHT)

SIDE_LEFT = "left"
SIDE_RIGHT = "right"
SIDE_TWO_SIDED = "two_sided"
SIDES = (SIDE_LEFT, SIDE_RIGHT, SIDE_TWO_SIDED)

# Provenance tags carried by expected facts
TAG_PUBLISHED = "PUBLISHED"
TAG_DERIVED = "DERIVED"
TAG_TRIVIAL = "TRIVIAL"
FACT_TAGS = frozenset({TAG_PUBLISHED, TAG_DERIVED, TAG_TRIVIAL})

# Output formats
FORMAT_JSON = "json"
FORMAT_TEXT = "text"
FORMATS = (FORMAT_JSON, FORMAT_TEXT)

# Exit codes
EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_SOLVER_FAILURE = 3

# Environment variables
ENV_SEED = "BANALG_SEED"
ENV_TOL = "BANALG_TOL"
ENV_LOG_LEVEL = "BANALG_LOG_LEVEL"

# Bundled data
CORPUS_FILENAME = "corpus.yaml"
