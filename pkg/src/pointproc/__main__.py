"""``python -m pointproc``."""

import sys

from pointproc.cli import main

sys.exit(main())
