# main.py
import logging

from src.cli.app import app
from src.core.logging_setup import configure_logging

logger = logging.getLogger(__name__)


def main():
    configure_logging()
    logger.debug("Starting timinglens")
    app(prog_name="timinglens")


if __name__ == "__main__":
    main()
