"""Deterministic engines, simulator, and session service for two
educational growth-hacking board games."""

__version__ = "0.1.0"
