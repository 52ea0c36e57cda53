import sys

from multihom.cli import main

sys.exit(main())
