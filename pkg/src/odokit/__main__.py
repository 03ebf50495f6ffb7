import sys

from odokit.cli import main

sys.exit(main())
