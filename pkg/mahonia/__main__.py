import sys

from mahonia.cli import main

sys.exit(main())
