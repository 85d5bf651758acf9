"""
Runtime configuration, read from the environment (and a local .env file).
"""

import os

from dotenv import load_dotenv

load_dotenv()

# ===========================
# CONFIGURATION & CONSTANTS
# ===========================

PRIME_SEARCH_K_MAX = int(os.getenv("UNITRI_PRIME_SEARCH_K_MAX", "1000000"))

ENUMERATION_LIMIT = int(os.getenv("UNITRI_ENUMERATION_LIMIT", "10000"))

SHEAR_TOLERANCE = float(os.getenv("UNITRI_SHEAR_TOLERANCE", "1e-8"))

DB_PATH = os.getenv("UNITRI_DB_PATH", "factorisations.db")

LOG_LEVEL = os.getenv("UNITRI_LOG_LEVEL", "WARNING")

SELFTEST_TRIALS = int(os.getenv("UNITRI_SELFTEST_TRIALS", "20"))

SEED = int(os.getenv("UNITRI_SEED", "20240601"))

# Absorption depth: (U U^-)^L normal forms.
SR1_DEPTH = 2
ZP_DEPTH = 3
