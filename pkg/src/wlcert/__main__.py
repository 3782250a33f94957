import sys

from wlcert.cli import main

sys.exit(main())
