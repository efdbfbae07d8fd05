import sys

from immersed.cli import main

sys.exit(main())
