import sys

from rational_cycles.cli import main

sys.exit(main())
