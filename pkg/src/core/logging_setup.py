# src/core/logging_setup.py
import logging
import sys
from typing import Optional

from dotenv import load_dotenv

from src.core.config import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: Optional[str] = None) -> None:
    """Route all toolkit logging to stderr (and LOG_FILE when configured)"""
    load_dotenv()
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(logging.FileHandler(settings.LOG_FILE))

    logging.basicConfig(
        format=LOG_FORMAT,
        level=(level or settings.LOG_LEVEL).upper(),
        handlers=handlers,
        force=True,
    )
