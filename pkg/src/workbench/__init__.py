"""Exact computational workbench: p-group module arithmetic, rank varieties,
cohomology dimension series, and sigma/tau bound certification."""

__version__ = "0.1.0"
