"""Certified remainder intervals and Euler acceleration for alternating series."""

__version__ = "1.0.0"
