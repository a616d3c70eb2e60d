"""Exact models and structure-equation verification for the quadratic algebras of
the 2D superintegrable systems S3 and S9."""

__version__ = "0.1.0"
