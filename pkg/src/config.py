"""Configuration loader and validator for the attribution toolkit."""

import os
from pathlib import Path

from dotenv import load_dotenv


class Config:
    """Configuration container loaded from environment variables."""

    def __init__(self):
        """Load configuration from .env file and environment."""
        # Load .env file from project root
        load_dotenv()

        # Truth cache (simulation oracle results)
        self.cache_dir: Path = Path(os.getenv("ATTRIB_CACHE_DIR", "data/cache"))

        # Reproducibility
        self.seed: int = self._int("ATTRIB_SEED", "20240101")

        # Estimation defaults
        self.clip_eps: float = self._float("ATTRIB_CLIP_EPS", "1e-3")
        self.folds: int = self._int("ATTRIB_FOLDS", "5")
        self.bootstrap_reps: int = self._int("ATTRIB_BOOTSTRAP", "200")

        # Simulation defaults
        self.truth_samples: int = self._int("ATTRIB_TRUTH_SAMPLES", "1000000")
        self.workers: int = self._int("ATTRIB_WORKERS", "-1")

        self.log_level: str = os.getenv("LOG_LEVEL", "INFO")

        self._validate()

    @staticmethod
    def _int(key: str, default: str) -> int:
        """Read an integer environment variable."""
        raw = os.getenv(key, default)
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"Environment variable {key} must be an integer, got {raw!r}")

    @staticmethod
    def _float(key: str, default: str) -> float:
        """Read a float environment variable."""
        raw = os.getenv(key, default)
        try:
            return float(raw)
        except ValueError:
            raise ValueError(f"Environment variable {key} must be a number, got {raw!r}")

    def _validate(self):
        """Validate configuration."""
        if not 0.0 < self.clip_eps < 0.5:
            raise ValueError(
                f"ATTRIB_CLIP_EPS must lie in (0, 0.5), got {self.clip_eps}"
            )
        if self.folds < 2:
            raise ValueError(f"ATTRIB_FOLDS must be at least 2, got {self.folds}")

        # Ensure cache directory exists
        self.cache_dir.mkdir(parents=True, exist_ok=True)


# Global config instance
config = Config()
