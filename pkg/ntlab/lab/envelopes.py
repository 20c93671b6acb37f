"""
Error envelopes: the right-hand sides of the mean-value theorems as functions of ``(x, y)``.

Piecewise envelopes keep their exponents as exact rationals, so continuity at
a breakpoint ``x = y^θ`` is checked with :class:`~fractions.Fraction`
arithmetic rather than floating comparison.
"""
import math
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from typing_extensions import Literal

from ntlab.arith import euler_phi
from ntlab.models._base import LabModel
from ntlab.types import RationalPair, TheoremName
from ntlab.utils import InvariantViolation, as_fraction

#: Default ``ε`` in the ``(xy)^ε`` factor.
DEFAULT_EPS = 0.01


class EnvelopePiece(LabModel):
    """
    ``x^α·y^β·(log x)^γ`` on ``x <= y^θ`` (or ``x < y^θ`` when ``upper_closed`` is false).
    """

    #: ``θ`` as ``(num, den)``; ``None`` for the last piece.
    upper: Optional[RationalPair] = None
    upper_closed: bool = True

    x_exp: RationalPair
    y_exp: RationalPair = (0, 1)
    log_exp: RationalPair = (0, 1)

    @property
    def alpha(self) -> Fraction:
        return as_fraction(self.x_exp)

    @property
    def beta(self) -> Fraction:
        return as_fraction(self.y_exp)

    @property
    def gamma(self) -> Fraction:
        return as_fraction(self.log_exp)

    def value(self, x: float, y: float) -> float:
        return x ** float(self.alpha) * y ** float(self.beta) * math.log(x) ** float(self.gamma)

    def x_exponent_at(self, theta: Fraction) -> Fraction:
        """
        Exponent of ``x`` when ``y = x^{1/θ}``, ignoring logarithms.
        """
        return self.alpha + self.beta / theta


class ErrorEnvelope(LabModel):
    """
    A piecewise envelope.

    With ``split="power"`` the piece is chosen by comparing ``log x / log y``
    against the ``upper`` breakpoints; a point on a breakpoint belongs to the
    piece on its left unless that piece is open there. With
    ``split="x_over_log_x"`` the first piece applies when ``x/log x >= y``.
    """

    theorem: TheoremName
    pieces: List[EnvelopePiece]
    split: Literal["power", "x_over_log_x"] = "power"

    #: Divide by ``φ(d)``.
    per_phi: bool = False

    @property
    def breakpoints(self) -> List[Fraction]:
        return [as_fraction(piece.upper) for piece in self.pieces if piece.upper is not None]

    def piece_at(self, x: float, y: float) -> EnvelopePiece:
        if self.split == "x_over_log_x":
            return self.pieces[0] if x / math.log(x) >= y else self.pieces[1]
        theta = math.log(x) / math.log(y)
        for piece in self.pieces:
            if piece.upper is None:
                return piece
            bound = float(as_fraction(piece.upper))
            if theta < bound or (theta == bound and piece.upper_closed):
                return piece
        raise AssertionError("the last piece has no upper bound")

    def evaluate(self, x: float, y: float, d: int = 2) -> float:
        value = self.piece_at(x, y).value(x, y)
        return value / euler_phi(d) if self.per_phi else value


def _piece(
    upper: Optional[str],
    x_exp: str,
    y_exp: str = "0",
    log_exp: str = "0",
    closed: bool = True,
) -> EnvelopePiece:
    def pair(text: str) -> Tuple[int, int]:
        value = Fraction(text)
        return (value.numerator, value.denominator)

    return EnvelopePiece(
        upper=pair(upper) if upper else None,
        upper_closed=closed,
        x_exp=pair(x_exp),
        y_exp=pair(y_exp),
        log_exp=pair(log_exp),
    )


RESD2 = ErrorEnvelope(
    theorem="resd2",
    split="x_over_log_x",
    pieces=[
        _piece(None, "1", "-1/2", "1/2"),
        _piece(None, "1/2", "0", "1"),
    ],
)

CUBQUARSEX = ErrorEnvelope(
    theorem="cubquarsex",
    pieces=[
        _piece("3/5", "1/2"),
        _piece("6/7", "4/3", "-1/2"),
        _piece("6/5", "3/4"),
        _piece("3/2", "7/6", "-1/2"),
        _piece("9/5", "5/6"),
        _piece("108/55", "10/9", "-1/2"),
        _piece("11/5", "1/2", "7/10"),
        _piece("5/2", "2/3", "1/3"),
        _piece(None, "1", "-1/2"),
    ],
)

#: ``x·E(x,y)/(φ(d) log x)`` with ``E = x^{-1/6} log x`` for ``y > x^{2/3}``
#: and ``E = y^{-1/21}`` otherwise.
LIBOUND = ErrorEnvelope(
    theorem="libound",
    per_phi=True,
    pieces=[
        _piece("3/2", "5/6", closed=False),
        _piece(None, "1", "-1/21", "-1"),
    ],
)

ENVELOPES: Dict[str, ErrorEnvelope] = {
    "resd2": RESD2,
    "cubquarsex": CUBQUARSEX,
    "libound": LIBOUND,
}


def resd2smooth_envelope(x: float, Y: float) -> float:
    """
    ``log log x + (x^{7/8}/Y^{1/4} + x/Y^{1/2})·log(xY)``.
    """
    return math.log(math.log(x)) + (x ** (7 / 8) / Y ** (1 / 4) + x / math.sqrt(Y)) * math.log(x * Y)


def envelope_eval(theorem: TheoremName, x: float, y: float, d: int = 2) -> float:
    """
    Evaluate an envelope without its ``(xy)^ε`` factor (see :func:`eps_factor`).

    For ``resd2smooth`` the second argument is ``Y``.

    >>> envelope_eval("cubquarsex", 1e6, 1e4)
    100000.0...
    """
    if not (x > 1 and y > 1):
        raise ValueError(f"envelopes need x > 1 and y > 1; got x={x}, y={y}")
    if theorem == "resd2smooth":
        return resd2smooth_envelope(x, y)
    try:
        envelope = ENVELOPES[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem {theorem!r}")
    return envelope.evaluate(x, y, d)


def eps_factor(x: float, y: float, eps: float = DEFAULT_EPS) -> float:
    return (x * y) ** eps


def exponent_at_boundary(envelope: ErrorEnvelope, index: int) -> Tuple[Fraction, Fraction]:
    """
    Exact ``x``-exponents of the pieces on either side of breakpoint ``index``.

    >>> exponent_at_boundary(CUBQUARSEX, 5)
    (Fraction(185, 216), Fraction(185, 216))
    """
    theta = as_fraction(envelope.pieces[index].upper)  # type: ignore[arg-type]
    return (
        envelope.pieces[index].x_exponent_at(theta),
        envelope.pieces[index + 1].x_exponent_at(theta),
    )


def check_continuity(envelope: ErrorEnvelope = CUBQUARSEX) -> Dict[Fraction, Fraction]:
    """
    Map each breakpoint to the common exponent of its two neighbouring pieces.

    Raises:
        InvariantViolation: if the pieces disagree at a breakpoint.
    """
    common: Dict[Fraction, Fraction] = {}
    for index, theta in enumerate(envelope.breakpoints):
        left, right = exponent_at_boundary(envelope, index)
        if left != right:
            raise InvariantViolation(
                f"{envelope.theorem} is discontinuous at x = y^{theta}: {left} != {right}"
            )
        common[theta] = left
    return common


class Dominance(NamedTuple):
    new: float
    libound: float
    holds: bool


def dominance(x: float, y: float, d: int, eps: float = DEFAULT_EPS) -> Dominance:
    """
    Compare the new envelope for order ``d`` against Li's envelope times ``log x``.

    ``d == 2`` uses ``resd2``; ``d`` in ``{3, 4, 6}`` uses ``cubquarsex·(xy)^ε``.
    """
    if d == 2:
        new = envelope_eval("resd2", x, y)
    elif d in (3, 4, 6):
        new = envelope_eval("cubquarsex", x, y) * eps_factor(x, y, eps)
    else:
        raise ValueError(f"no improved envelope for d={d}")
    old = envelope_eval("libound", x, y, d) * math.log(x)
    return Dominance(new, old, new <= old)
