"""Horoball shadows, cusp excursions and stationary measures on the circle."""

__version__ = "0.1.0"
