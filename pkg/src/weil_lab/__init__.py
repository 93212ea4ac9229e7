"""weil-lab: desk-scale numerics for the Weil hermitian form over zeta zeros,
the de Branges basis attached to E(z) = xi(1/2-iz) + xi'(1/2-iz), screw-function
kernels, and the associated Hilbert-Polya eigenstructure."""

__version__ = "0.1.0"
