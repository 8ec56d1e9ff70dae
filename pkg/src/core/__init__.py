"""Drift, scattering, entanglement, teleportation and sweep solvers."""
