import sys

from overres.cli import main

sys.exit(main())
