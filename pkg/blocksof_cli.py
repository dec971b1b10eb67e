#!/usr/bin/env python3

import sys
from blocksof import Cli

if __name__ == '__main__':
    sys.exit(Cli.main())
