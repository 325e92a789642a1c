"""Exact computer algebra for cyclotomic BMW algebras and their
cyclotomic Brauer shadows."""

__version__ = "0.1.0"
