import sys

from eqarea.cli import main

sys.exit(main())
