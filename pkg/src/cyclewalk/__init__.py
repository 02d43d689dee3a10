"""Quantum walks on power-of-two cycles: circuits, simulation, cost models."""

__version__ = "0.1.0"
