"""Millimeter-wave beamforming-gain modeling and SIR coverage analysis."""

__version__ = "0.1.0"
