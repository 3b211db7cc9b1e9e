import sys

from graphres.cli import main

sys.exit(main())
