from .precision import MIN_PRECISION_BITS, HighPrecReal
