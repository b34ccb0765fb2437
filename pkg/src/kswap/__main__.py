import sys

from kswap.cli import main

sys.exit(main())
