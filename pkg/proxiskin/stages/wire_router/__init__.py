"""Layered routing graph, port placement and greedy non-overlapping wiring."""
