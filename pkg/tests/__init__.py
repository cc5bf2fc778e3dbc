"""
Unit tests package for the qRAM repair workbench
"""

# This file is intentionally left empty to mark this directory as a Python package.
# It allows the tests to be discovered by unittest discover.