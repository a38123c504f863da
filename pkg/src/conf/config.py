import os
import logging
from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.environ.get("SEPSYS_LOG_LEVEL", "INFO")

logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO))

# Size guards (everything is exponential somewhere)
MAX_LATTICE_ELEMENTS = int(os.environ.get("SEPSYS_MAX_LATTICE_ELEMENTS", 4096))
MAX_GROUND_SET = int(os.environ.get("SEPSYS_MAX_GROUND_SET", 20))
ENFORCE_LIMITS = os.environ.get("SEPSYS_ENFORCE_LIMITS", "true").lower() not in ("0", "false", "no")

# API
RATE_LIMIT = os.environ.get("SEPSYS_RATE_LIMIT", "30/minute")

# Property suites
SEED = int(os.environ.get("SEPSYS_SEED", 20240611))
