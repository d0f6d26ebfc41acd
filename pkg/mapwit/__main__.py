import sys

from mapwit.src.cli import main

sys.exit(main())
