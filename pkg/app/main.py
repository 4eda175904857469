import logging
from typing import List, Optional

from app.cli import COMMANDS, build_parser
from app.middleware.error import error_handler
from app.services.run_config import build_run_config

logger = logging.getLogger(__name__)


@error_handler
def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, validate the run configuration and dispatch the command"""
    args = build_parser().parse_args(argv)
    flags = vars(args)
    command = flags.pop("command")
    config_path = flags.pop("config")

    config = build_run_config(command, flags, config_path)
    logger.info(f"Running {command}")
    return COMMANDS[command](config)
