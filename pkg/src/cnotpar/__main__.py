import sys

from cnotpar.cli import main

sys.exit(main())
