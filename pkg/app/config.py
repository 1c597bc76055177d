# app/config.py
import os
from pathlib import Path
from typing import Dict, Optional

from dotenv import dotenv_values, load_dotenv

# Load environment variables
load_dotenv()

# ------------------ Environment Variables ------------------
LOG_LEVEL = os.getenv("HARDY_LOG_LEVEL", "INFO").upper()
DEFAULT_EPSILON = float(os.getenv("HARDY_EPSILON", "1e-10"))
DEFAULT_TOL_STEP = float(os.getenv("HARDY_TOL_STEP", "1e-14"))
DEFAULT_MAX_ITER = int(os.getenv("HARDY_MAX_ITER", "200"))
DEFAULT_QUAD_ORDER = int(os.getenv("HARDY_QUAD_ORDER", "32"))
DEFAULT_GRID_COUNT = int(os.getenv("HARDY_GRID_COUNT", "1001"))
PORT = int(os.getenv("PORT", "8080"))

if DEFAULT_EPSILON <= 0:
    raise RuntimeError("HARDY_EPSILON must be positive!")


# ------------------ Run-config files ------------------
def load_run_config_file(path: Optional[str]) -> Dict[str, str]:
    """
    Reads a `key = value` run-config file (`#` starts a comment) and returns
    the pairs with dashes in keys normalised to underscores. Empty values are
    dropped so they never shadow defaults.
    """
    if not path:
        return {}
    file_path = Path(path)
    if not file_path.is_file():
        raise FileNotFoundError(f"Config file not found: {path}")

    values = dotenv_values(file_path)
    return {
        key.strip().replace("-", "_"): value.strip()
        for key, value in values.items()
        if value is not None and value.strip() != ""
    }
