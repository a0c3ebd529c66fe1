"""Logging configuration using Loguru"""

import sys
from typing import Optional

from loguru import logger

# solver and sweep progress; kept off stdout so emitted tables stay parseable
CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def setup_logging(
    level: str = "WARNING",
    log_file: Optional[str] = None,
    serialize: bool = True,
) -> None:
    """Configure Loguru for a CLI run.

    Saddle-point diagnostics (ambiguous fixed points, retries from q0 = 0) are logged at
    WARNING and DEBUG; sweep, contour and channel-batch summaries at INFO.
    """

    logger.remove()

    logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level.upper(), colorize=True)

    if log_file:
        # one JSON record per line
        logger.add(
            log_file,
            rotation="50 MB",
            retention="7 days",
            level=level.upper(),
            serialize=serialize,
            enqueue=True,  # process-pool workers write through one queue
            backtrace=True,
            diagnose=False,
        )


__all__ = ["logger", "setup_logging"]
