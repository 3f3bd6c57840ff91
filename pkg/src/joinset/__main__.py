"""Entry point for python -m joinset."""

import sys

from .cli import main

sys.exit(main())
