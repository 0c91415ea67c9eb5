"""Noise baselines, power-law fits and detection ranges per sensor."""
