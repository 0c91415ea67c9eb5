"""RC-counter sensor model, coupling law, drift compensation and approach recordings."""
