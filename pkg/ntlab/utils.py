import math
import re
import textwrap
import warnings
from fractions import Fraction
from typing import Any, Sequence, Union


class LabWarning(UserWarning):
    """
    Emitted for non-fatal anomalies: a mode fallback, a parameter clamped into
    its valid range, or a report-only statistic outside its customary scale.
    """


class InvariantViolation(AssertionError):
    """
    A mathematical identity or unconditional inequality failed to hold.

    Raised by the verify commands and by internal consistency checks; the
    command line exits with status 3 when it sees one.
    """


def warn(message: str, *, stacklevel: int = 3) -> None:
    """
    Issue a :class:`LabWarning` attributed to the caller of the public function.
    """
    warnings.warn(message, category=LabWarning, stacklevel=stacklevel)


def as_fraction(value: Union[int, str, Fraction, Sequence[int]]) -> Fraction:
    """
    Convert ``3``, ``"3/5"``, ``Fraction(3, 5)`` or the pair ``(3, 5)`` to a :class:`~fractions.Fraction`.
    """
    if isinstance(value, (int, str, Fraction)):
        return Fraction(value)
    num, den = value
    return Fraction(num, den)


def parse_number(value: Any) -> Union[int, float]:
    """
    Parse a numeric parameter, accepting scientific notation.

    Integral values come back as ``int`` so that ``"1e4"`` can be used where
    a bound or a modulus is expected.

    >>> parse_number("1e4")
    10000
    >>> parse_number("2.5")
    2.5
    """
    if isinstance(value, bool):
        raise TypeError(f"expected a number, got {value!r}")
    if isinstance(value, int):
        return value
    number = float(value)
    if not math.isfinite(number):
        raise ValueError(f"expected a finite number, got {value!r}")
    if number.is_integer() and abs(number) < 2**63:
        return int(number)
    return number


def rel_diff(a: complex, b: complex, *, floor: float = 1.0) -> float:
    """
    Relative difference ``|a - b| / max(floor, |a|, |b|)``.
    """
    return abs(a - b) / max(floor, abs(a), abs(b))


def _append_docstring_text(obj: Any, text: str) -> None:
    if not (doc := obj.__doc__):
        return
    doc = doc.rstrip("\n")
    if has_leading_spaces := re.match(r"^\s+", doc):
        text = textwrap.indent(text, has_leading_spaces[0])
    obj.__doc__ = f"{doc}\n\n{text}"
