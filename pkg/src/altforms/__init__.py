"""altforms: exact invariants, octonion structures, orbit classification, and
integral basis search for alternating forms on 6-, 7-, and 2n-dimensional
spaces."""

__version__ = "0.1.0"
