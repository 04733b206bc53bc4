"""Centraliser algebras of monomial representations of finite groups,
their character tables, and the complex Hadamard matrices they contain."""

__version__ = "0.1.0"
