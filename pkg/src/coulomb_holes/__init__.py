"""Hole probabilities of two-dimensional Coulomb gases: balayage measures and
the leading-order constant C for a catalogue of potentials and hole shapes."""

__version__ = "0.1.0"
