"""Poisson-disk sensor placement and nodule instantiation."""
