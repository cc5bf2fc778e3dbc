#!/usr/bin/env python3
"""
qRAM Repair Workbench - yield, resource and circuit studies of spare-cell repair for fault-tolerant qRAM
"""
import sys
from cli import main

if __name__ == "__main__":
    sys.exit(main())
