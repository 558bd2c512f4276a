"""``python -m banalg``."""

import sys

from .cli import main

sys.exit(main())
