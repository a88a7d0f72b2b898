"""Rendering scripts for reconstruction CSVs.

These scripts only draw what the numerical CLI wrote; they never import
the numeric core or recompute anything.
"""

from .io import RunData, read_run_csv

__version__ = "0.1.0"

__all__ = ["RunData", "read_run_csv"]
