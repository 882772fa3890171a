"""
Runtime settings.

Everything tunable from the environment is read here once; library code
takes explicit arguments and falls back to these defaults.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURE_SCHEMA = "v1"
DEFAULT_DATA_DIR = REPO_ROOT / "data" / FIXTURE_SCHEMA

# moduli the CLI accepts, as literal 3^e -> e
SUPPORTED_MODULI = {3: 1, 9: 2, 27: 3}


@dataclass(frozen=True)
class Settings:
    """Environment-derived defaults"""
    data_dir: Path = DEFAULT_DATA_DIR
    check_degree: int = 3 ** 7
    branch_prefix: Optional[int] = None
    log_level: str = "WARNING"


def _int_env(env, name, default):
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def load_settings(environ=None):
    """Build Settings from the process environment (or a given mapping)"""
    env = os.environ if environ is None else environ
    data_dir = env.get("PSICONG_DATA_DIR")
    return Settings(
        data_dir=Path(data_dir) if data_dir else DEFAULT_DATA_DIR,
        check_degree=_int_env(env, "PSICONG_CHECK_DEGREE", Settings.check_degree),
        branch_prefix=_int_env(env, "PSICONG_BRANCH_PREFIX", None),
        log_level=env.get("PSICONG_LOG_LEVEL", "WARNING").upper(),
    )


def modulus_exponent(modulus):
    """Map a literal modulus 3, 9 or 27 to its exponent"""
    try:
        return SUPPORTED_MODULI[int(modulus)]
    except (KeyError, ValueError):
        raise ValueError(
            f"modulus must be one of {sorted(SUPPORTED_MODULI)}, got {modulus}"
        ) from None
