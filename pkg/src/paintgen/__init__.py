"""Interactive painting-driven progressive image synthesis and editing, desk scale."""

__version__ = "0.1.0"
