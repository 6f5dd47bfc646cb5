import sys

from kings.cli import main

sys.exit(main())
