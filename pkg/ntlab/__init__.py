__version__ = "0.1.0"

from .arith import jacobi, mobius, powmod, square_part
from .characters import CharacterTable, build_table
from .gauss_poisson import SmoothWindow, make_window, smoothed_mean
from .primes import pi, pi_class, stream_primes
from .residue import count_P, mean_value

__all__ = [
    "CharacterTable",
    "SmoothWindow",
    "build_table",
    "count_P",
    "jacobi",
    "make_window",
    "mean_value",
    "mobius",
    "pi",
    "pi_class",
    "powmod",
    "smoothed_mean",
    "square_part",
    "stream_primes",
]
