"""Entry point for `python -m gasket_resistance`."""

import sys

from gasket_resistance import main

if __name__ == "__main__":
    sys.exit(main())
