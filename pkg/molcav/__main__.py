# molcav/__main__.py
"""python -m molcav"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
