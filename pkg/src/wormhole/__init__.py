"""Exact invariants of colored trivalent graphs in connected sums of S^1 x S^2."""

from __future__ import annotations

__version__ = "0.1.0"

from .diagram import Diagram, load, parse_dsl
from .engine import bracket, eval_s3_bruteforce, eval_s3_transfer, wormhole_reduce
from .kernels import BACKEND
from .qring import A, D, LaurentPoly, RatFn

__all__ = [
    "A",
    "BACKEND",
    "D",
    "Diagram",
    "LaurentPoly",
    "RatFn",
    "bracket",
    "eval_s3_bruteforce",
    "eval_s3_transfer",
    "load",
    "parse_dsl",
    "wormhole_reduce",
]
