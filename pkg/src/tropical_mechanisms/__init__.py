"""Exact analysis of DSIC mechanisms through tropical geometry."""

__version__ = "0.1.0"
