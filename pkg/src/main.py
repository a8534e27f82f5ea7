"""Command-line entry point: python -m src.main <command>.

Commands:
    estimate  one PN/PS estimate from a CSV file
    simulate  Monte-Carlo study over registered cases
    truth     true PN/PS value of a case
    report    render a metrics CSV as a text table
    apply     multi-exposure (and subgroup) PN analysis of a case-control file
"""

import json
import logging
import sys
from typing import List, Optional

from src.cli.arguments import build_parser
from src.cli.commands import EXIT_ESTIMATION, EXIT_OK, EXIT_USAGE
from src.config import config
from src.errors import AttributionError, RegistryError

# Configure logging; stdout is reserved for results
logging.basicConfig(
    level=getattr(logging, config.log_level.upper()),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

__all__ = ["EXIT_ESTIMATION", "EXIT_OK", "EXIT_USAGE", "main"]


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and map errors to exit codes."""
    args = build_parser().parse_args(argv)

    try:
        return args.handler(args)
    except RegistryError as e:
        logger.error(f"{e.code}: {e.message}")
        print(json.dumps(e.to_dict()))
        return EXIT_USAGE
    except AttributionError as e:
        logger.error(f"{e.code}: {e.message}")
        print(json.dumps(e.to_dict()))
        return EXIT_ESTIMATION


if __name__ == "__main__":
    sys.exit(main())
