"""Bootstrap MLP ensemble mapping capacitance to position, and the calibrated uncertainty grid."""
