import sys

from tonalang.cli import main

sys.exit(main())
