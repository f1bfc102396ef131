"""Exact algebra: coefficient ring and matrix factorizations."""
