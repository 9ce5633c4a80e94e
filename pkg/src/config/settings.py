"""Configuration settings loaded from environment variables"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from src.config.constants import DEFAULT_K_C, DEFAULT_TRIALS

# Load environment variables
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be a number, got {raw!r}") from e


@dataclass
class RuntimeSettings:
    """Process-level settings: parallelism, logging and output location"""
    jobs: int
    log_level: str
    output_dir: str

    @classmethod
    def from_env(cls) -> "RuntimeSettings":
        jobs = _env_int("LINEPATROL_JOBS", 1)
        if jobs < 1:
            raise ValueError("LINEPATROL_JOBS must be at least 1")

        return cls(
            jobs=jobs,
            log_level=os.getenv("LINEPATROL_LOG_LEVEL", "INFO").upper(),
            output_dir=os.getenv("LINEPATROL_OUTPUT_DIR", "."),
        )


@dataclass
class SolverDefaults:
    """Solver defaults that operators may override per deployment"""
    trials: int
    k_c: float

    @classmethod
    def from_env(cls) -> "SolverDefaults":
        trials = _env_int("LINEPATROL_TRIALS", DEFAULT_TRIALS)
        k_c = _env_float("LINEPATROL_K_C", DEFAULT_K_C)

        if trials < 1:
            raise ValueError("LINEPATROL_TRIALS must be at least 1")
        if k_c <= 0:
            raise ValueError("LINEPATROL_K_C must be positive")

        return cls(trials=trials, k_c=k_c)


@dataclass
class Settings:
    """Global application settings"""
    runtime: RuntimeSettings
    solver: SolverDefaults

    @classmethod
    def load(cls) -> "Settings":
        """Load all settings from the environment"""
        return cls(
            runtime=RuntimeSettings.from_env(),
            solver=SolverDefaults.from_env(),
        )


# Global settings instance
settings: Optional[Settings] = None


def get_settings(force_reload: bool = False) -> Settings:
    """Get or create global settings instance"""
    global settings
    if settings is None or force_reload:
        settings = Settings.load()
    return settings
