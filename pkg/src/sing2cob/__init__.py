"""Singular 2-cobordisms, twin Frobenius algebras and their exact evaluation."""

__version__ = "0.1.0"
