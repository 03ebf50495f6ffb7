"""Exact combinatorics and K-theory bookkeeping for self-similar odometer k-graphs."""

from odokit.kgraph import (
    OdometerSpec,
    PathWord,
    act,
    check_axioms,
    compose,
    digits,
    edge,
    factorize,
    g_lambda,
    weight,
)

__version__ = "0.1.0"

__all__ = [
    "OdometerSpec",
    "PathWord",
    "act",
    "check_axioms",
    "compose",
    "digits",
    "edge",
    "factorize",
    "g_lambda",
    "weight",
]
