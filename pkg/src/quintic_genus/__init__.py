"""Genus numbers of quintic fields, quintic p-adic masses and density constants."""

__version__ = "0.1.0"
