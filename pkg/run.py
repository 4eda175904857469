#!/usr/bin/env python3
import sys
import logging

from app.config import DEBUG, LOG_LEVEL
from app.main import main

# Set up logging; results go to stdout, logs to stderr
logging.basicConfig(
    level=logging.DEBUG if DEBUG else LOG_LEVEL,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)

if __name__ == "__main__":
    sys.exit(main())
