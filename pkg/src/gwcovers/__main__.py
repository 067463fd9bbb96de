import sys

from gwcovers.cli import main

sys.exit(main())
