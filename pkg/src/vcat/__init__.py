"""Finite enriched categories over pluggable bases, the Grothendieck
construction for pseudofunctors into enriched categories, its inverse, and
machine verification of the resulting 2-equivalence on concrete instances.
"""

__version__ = "0.1.0"
