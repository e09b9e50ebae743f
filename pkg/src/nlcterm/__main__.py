"""Allow running nlcterm as `python -m nlcterm`."""

import sys

from nlcterm.cli import main

sys.exit(main())
