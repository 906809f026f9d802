"""Barycenters, distributions and MLE on hyperbolic balls (C++ core)."""

from hyperball._hyperball import (  # noqa: F401
    ball,
    bergman,
    digamma,
    disc,
    gauss_2f1,
    log_gamma,
)

__all__ = ["disc", "ball", "bergman", "log_gamma", "digamma", "gauss_2f1"]
