"""Skin-unit assembly from a base mesh and design parameters."""
