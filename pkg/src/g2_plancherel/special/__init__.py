"""Complex Gamma (Lanczos) with explicit pole handling."""

from .cgamma import gamma, gamma_ratio, log_gamma, log_gamma_quotient, reciprocal_gamma

__all__ = ['gamma', 'gamma_ratio', 'log_gamma', 'log_gamma_quotient', 'reciprocal_gamma']
