from pathlib import Path

# Root folder of the package
ROOT = Path(__file__).parent.parent.resolve()

TEMPLATES_DIR = ROOT / "view" / "templates"
REPORT_SCHEMA_PATH = ROOT / "view" / "report.schema.json"

SCHEMA_VERSION = "1.0"

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
LOG_LEVEL = "INFO"

# Configuration size limits
MAX_CUBE_ITEMS = 10
MAX_PRODUCT_POINTS = 10 ** 5
MAX_BOX_POINTS = 10 ** 4

# Exhaustive enumeration without --long-running
ENUMERATION_MAX_CUBE_ITEMS = 3
ENUMERATION_MAX_PRODUCT_POINTS = 9

# Above this many (d+1)-subsets the upper hull comes from double description
SUBSET_ENUMERATION_LIMIT = 5000

# Largest m for which optimal_sensitivity builds the Hamming construction
HAMMING_VERIFY_MAX_ITEMS = 6

# verify_complex_by_intersection runs 2^(2^m) subset checks in the worst case
MAX_INTERSECTION_CHECK_ITEMS = 4

# Largest explicit symmetry group; the full-cube group of the 6-cube has this order
MAX_GROUP_ORDER = 46080

# SVG output
SVG_DECIMALS = 6
SVG_SIZE_PX = 480
SVG_MARGIN_PX = 24
DEFAULT_VIEWPORT = ("-1", "-1", "3", "3")

# Random mechanisms for property checks
RANDOM_DENOMINATOR_MAX = 60

# Process exit codes
EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_SIZE_GUARD = 4
EXIT_RENDER_DIMENSION = 5
