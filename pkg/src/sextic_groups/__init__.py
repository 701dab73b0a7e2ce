"""Fundamental groups of plane sextics with two E6 points."""

__version__ = "0.1.0"
