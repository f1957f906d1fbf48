import sys

from fairquads.cli import main

sys.exit(main())
