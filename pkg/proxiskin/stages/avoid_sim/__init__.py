"""Forward kinematics, obstacle extraction and the skin-informed avoidance controller."""
