# Exact commutative algebra engine: resolvents, cotangent modules, linkage and Poincare series

__version__ = "0.3.0"
