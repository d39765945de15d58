"""Equivariant characteristic classes: Cartan model, Chern-Weil forms, Dupont/Getzler checks."""
__version__ = "0.1.0"
