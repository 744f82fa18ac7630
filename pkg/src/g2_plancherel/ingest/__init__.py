"""
Data ingestion module.

- load_sampled_function: CSV samples H ↦ f(H)
- load_spectrum: CSV samples of a transform on i a*
"""

from .loaders import load_sampled_function, load_spectrum, write_frame, write_json

__all__ = [
    'load_sampled_function',
    'load_spectrum',
    'write_frame',
    'write_json',
]
