"""onebit: capacity of many one-bit transceivers in Rayleigh fading"""

__version__ = "0.1.0"
