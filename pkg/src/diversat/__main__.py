import sys

from diversat.cli import main

sys.exit(main())
