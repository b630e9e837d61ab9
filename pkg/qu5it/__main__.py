import sys

from qu5it.runner.cli import main

sys.exit(main())
