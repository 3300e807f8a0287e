"""Define exact and numeric algebra over Laurent polynomials in A."""
