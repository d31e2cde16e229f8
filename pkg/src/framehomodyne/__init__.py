"""Homodyne detection of wave-packet signals across inertial, accelerated and delayed frames."""

__version__ = "0.1.0"
