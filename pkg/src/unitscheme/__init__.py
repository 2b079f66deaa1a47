"""Exact verification of the unit-group scheme of a non-commutative
finite flat group scheme over F_p-algebras, and of its quotient."""

__version__ = "0.1.0"
