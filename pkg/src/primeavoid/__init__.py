"""Decision procedures for prime avoidance and prime absorbance."""

__version__ = "0.1.0"
