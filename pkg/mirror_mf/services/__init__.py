"""Geometry services: toric potentials, strip families, Floer complexes, numeric checks."""
