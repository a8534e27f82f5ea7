"""SQLite cache of Monte-Carlo true values."""

import logging
import sqlite3
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from src.config import config
from src.estimation.types import Estimand
from src.nuisance.streams import SeedKey, as_key
from src.simulation.cases import DgpSpec
from src.simulation.generator import true_value

logger = logging.getLogger(__name__)


class TruthCache:
    """Stores true PN/PS values keyed by (case, estimand, samples, seed)."""

    def __init__(self, db_path: Path):
        """Initialize cache location.

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.conn: Optional[sqlite3.Connection] = None

    def connect(self):
        """Open database connection and make sure the table exists."""
        self.conn = sqlite3.connect(str(self.db_path))
        self.conn.row_factory = sqlite3.Row
        self.init_schema()
        return self

    def close(self):
        """Close database connection."""
        if self.conn:
            self.conn.close()
            self.conn = None

    def __enter__(self):
        return self.connect()

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def init_schema(self):
        """Create the truth table if not exists."""
        self.conn.execute("""
            CREATE TABLE IF NOT EXISTS true_values (
                case_key TEXT NOT NULL,
                estimand TEXT NOT NULL,
                samples INTEGER NOT NULL,
                seed TEXT NOT NULL,
                value REAL NOT NULL,
                computed_at DATETIME DEFAULT CURRENT_TIMESTAMP,
                PRIMARY KEY (case_key, estimand, samples, seed)
            )
        """)
        self.conn.commit()

    @staticmethod
    def _seed_text(seed: SeedKey) -> str:
        return "-".join(str(k) for k in as_key(seed))

    def get(self, case_key: str, estimand: Estimand, samples: int, seed: SeedKey) -> Optional[float]:
        cursor = self.conn.execute(
            """
            SELECT value FROM true_values
            WHERE case_key = ? AND estimand = ? AND samples = ? AND seed = ?
            """,
            (case_key, estimand.value, samples, self._seed_text(seed)),
        )
        row = cursor.fetchone()
        return float(row["value"]) if row else None

    def put(self, case_key: str, estimand: Estimand, samples: int, seed: SeedKey, value: float):
        self.conn.execute(
            """
            INSERT OR REPLACE INTO true_values (
                case_key, estimand, samples, seed, value, computed_at
            ) VALUES (?, ?, ?, ?, ?, ?)
            """,
            (case_key, estimand.value, samples, self._seed_text(seed), value, datetime.now()),
        )
        self.conn.commit()

    def entries(self) -> List[dict]:
        cursor = self.conn.execute(
            "SELECT case_key, estimand, samples, seed, value FROM true_values ORDER BY case_key"
        )
        return [dict(row) for row in cursor.fetchall()]


def default_cache_path() -> Path:
    return config.cache_dir / "truth.db"


def cached_true_value(
    spec: DgpSpec,
    estimand: Estimand,
    samples: int,
    seed: SeedKey,
    cache: Optional[TruthCache] = None,
) -> float:
    """true_value, reading from and writing to the cache when one is open."""
    if cache is not None:
        value = cache.get(spec.key, estimand, samples, seed)
        if value is not None:
            logger.debug(f"Truth cache hit for case {spec.key} {estimand.value}")
            return value

    value = true_value(spec, estimand, samples, seed)
    if cache is not None:
        cache.put(spec.key, estimand, samples, seed, value)
    return value
