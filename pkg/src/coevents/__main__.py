import sys

from coevents.cli import main

sys.exit(main())
