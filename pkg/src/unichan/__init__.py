"""Universal channel codes with shared randomness, channel simulators and bound checks."""

__version__ = "0.1.0"
