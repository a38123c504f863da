from slowapi import Limiter
from slowapi.util import get_remote_address

from src.conf import config

limiter = Limiter(key_func=get_remote_address)

# Per-route decorator carrying the configured limit, e.g. "30/minute"
api_limit = limiter.limit(config.RATE_LIMIT)
