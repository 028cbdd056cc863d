"""
config.py

Environment-driven settings shared by the library, the CLI and the API
"""

import os

from dotenv import load_dotenv

load_dotenv()

# ================== CONFIG ==================
DEFAULT_BUDGET = int(os.getenv("CAUSAL_BUDGET", "10000000"))
DEFAULT_PARALLEL = int(os.getenv("CAUSAL_PARALLEL", "1"))

# Logging
LOG_LEVEL = os.getenv("CAUSAL_LOG_LEVEL", "WARNING")
LOG_DIR = os.getenv("CAUSAL_LOG_DIR")  # unset → no log file

# API
API_HOST = os.getenv("CAUSAL_API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("CAUSAL_API_PORT", "8110"))

# Axiom instantiation
AXIOM_MAX_VARIABLES = int(os.getenv("CAUSAL_AXIOM_MAX_VARIABLES", "4"))
