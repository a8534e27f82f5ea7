"""Write a synthetic case-control CSV with the stroke risk-factor layout."""

import argparse
import logging
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import config
from src.data.synthetic import DEFAULT_ROWS, write_case_control

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/synthetic_case_control.csv")
    parser.add_argument("--n", type=int, default=DEFAULT_ROWS, help="Rows (even)")
    parser.add_argument("--seed", type=int, default=config.seed)
    parser.add_argument("--missing-rate", type=float, default=0.0)
    args = parser.parse_args()

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_case_control(out, n=args.n, seed=args.seed, missing_rate=args.missing_rate)


if __name__ == "__main__":
    main()
