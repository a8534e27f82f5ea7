"""Run the simulation presets: linear designs, robustness under each assumption
and the comparison with IPW and outcome regression.

Usage:
    python scripts/reproduce_tables.py linear --reps 1000
    python scripts/reproduce_tables.py all --reps 200 --out-dir results
"""

import argparse
import logging
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import config
from src.delivery.serializers import metrics_to_frame, write_metrics_csv
from src.delivery.tables import format_metrics_table
from src.simulation.study import run_study
from src.simulation.truth_cache import TruthCache, default_cache_path

logging.basicConfig(
    level=getattr(logging, config.log_level.upper()),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

PRESETS = {
    # linear models, with and without the monotonicity adjustment
    "linear": dict(cases=[1, 2, 3, 4], estimators=["pn_mono", "pn_inde"], known_propensity=True),
    # double robustness under monotonicity
    "mono-robustness": dict(cases=[5, 6, 7, 8, 9, 10], estimators=["pn_mono"], known_propensity=False),
    # robustness under conditional independence
    "inde-robustness": dict(cases=[11, 12, 13, 14, 15, 16], estimators=["pn_inde"], known_propensity=False),
    # comparison with IPW and outcome regression
    "baselines": dict(cases=[17, 18, 19], estimators=["pn_mono", "pn_ipw", "pn_or"], known_propensity=False),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("preset", choices=[*PRESETS, "all"])
    parser.add_argument("--reps", type=int, default=1000)
    parser.add_argument("--n", default="500,1000,2000")
    parser.add_argument("--seed", type=int, default=config.seed)
    parser.add_argument("--workers", type=int, default=config.workers)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()

    names = list(PRESETS) if args.preset == "all" else [args.preset]
    n_values = [int(v) for v in args.n.split(",")]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with TruthCache(default_cache_path()) as cache:
        for name in names:
            preset = PRESETS[name]
            logger.info(f"Preset {name}: cases {preset['cases']}")
            rows = run_study(
                preset["cases"],
                preset["estimators"],
                n_values,
                args.reps,
                seed=args.seed,
                workers=args.workers,
                known_propensity=preset["known_propensity"],
                cache=cache,
            )
            write_metrics_csv(rows, out_dir / f"{name}.csv")
            table = format_metrics_table(metrics_to_frame(rows))
            (out_dir / f"{name}.txt").write_text(table, encoding="utf-8")
            print(table)


if __name__ == "__main__":
    main()
