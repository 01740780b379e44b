# Truncated power series, deviations and Poincare series
