from __future__ import annotations
import os
from dotenv import load_dotenv


load_dotenv()


LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Reproducibility (the CLI --seed flag wins over the environment)
DEFAULT_SEED = int(os.getenv("LINKPRED_SEED", "0"))

# Worker processes for trial evaluation
DEFAULT_JOBS = int(os.getenv("LINKPRED_JOBS", str(os.cpu_count() or 1)))

# Protocol defaults
DEFAULT_HORIZON = int(os.getenv("LINKPRED_HORIZON", "2"))
DEFAULT_TEST_FRACTION = float(os.getenv("LINKPRED_TEST_FRACTION", "0.1"))
DEFAULT_ALPHA = float(os.getenv("LINKPRED_ALPHA", "0.05"))

# Networks below this size are "small": 1000 trials and all three metrics
SMALL_NETWORK_NODES = int(os.getenv("LINKPRED_SMALL_NETWORK_NODES", "1000"))
SMALL_NETWORK_TRIALS = 1000
LARGE_NETWORK_TRIALS = 100

# AUROC/AUPR are refused above this node count unless explicitly overridden
METRIC_GATE_NODES = int(os.getenv("LINKPRED_METRIC_GATE", "1000"))

# Output paths
RESULTS_DIR = os.getenv("LINKPRED_RESULTS_DIR", "results")
RESULTS_SCHEMA_VERSION = 1

# Exact Mann-Whitney enumeration up to this pooled sample size
MWW_EXACT_MAX_TOTAL = 12
