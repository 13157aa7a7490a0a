"""Degree-wise verification toolkit for Hilbert series of generic forms.

Subpackages are imported on demand so that thread-count environment
variables can take effect before numpy is loaded.
"""

__version__ = "0.1.0"
