import os
from dotenv import load_dotenv

# Load .env file
load_dotenv()

# Logging settings
LOG_LEVEL = os.environ.get('SPLITSUPER_LOG_LEVEL', 'WARNING')
LOG_FORMAT = os.environ.get('SPLITSUPER_LOG_FORMAT', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

# Property suite defaults (fuzz command)
FUZZ_DEFAULT_SEEDS = int(os.environ.get('SPLITSUPER_FUZZ_SEEDS', 100))
FUZZ_DEFAULT_MAX_DIM = int(os.environ.get('SPLITSUPER_FUZZ_MAX_DIM', 10))

# Truncation N for example1 entries when --param is omitted; other entries use their own default
CATALOG_DEFAULT_N = int(os.environ.get('SPLITSUPER_CATALOG_N', 2))

# Reports
REPORT_SCHEMA_VERSION = int(os.environ.get('SPLITSUPER_REPORT_SCHEMA_VERSION', 1))
