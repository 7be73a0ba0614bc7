import sys

from gridsep.cli import main

sys.exit(main())
