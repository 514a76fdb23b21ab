"""Zero-divisor graphs of finite commutative rings and their global
offensive alliance numbers."""

__version__ = "0.1.0"
