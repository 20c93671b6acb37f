"""
ntlab provides a number of type aliases and TypedDicts which are used as inputs
and return values to various ntlab functions.
"""
from typing import Dict, List, Tuple, Union

from typing_extensions import Literal, TypeAlias, TypedDict

#: An exact element ``a + b·θ`` of ℤ[i] or ℤ[ω], stored as the pair ``(a, b)``.
IntPair: TypeAlias = Tuple[int, int]

#: A rational exponent ``num/den`` kept as an exact pair.
RationalPair: TypeAlias = Tuple[int, int]

#: Either every ``2 <= a <= y`` or only the ``a`` which are not perfect squares.
AMode: TypeAlias = Literal["all", "nonsquare"]

#: How :func:`~ntlab.residue.mean_value` evaluates the averaged sum.
MeanMode: TypeAlias = Literal["auto", "character", "direct"]

#: Which discriminants the Jutila statistic sums over.
JutilaConvention: TypeAlias = Literal["fundamental", "nonsquare"]

#: Names of the envelopes :func:`~ntlab.lab.envelopes.envelope_eval` knows.
TheoremName: TypeAlias = Literal["resd2", "cubquarsex", "libound", "resd2smooth"]

#: A single scalar parameter value accepted on the command line or in a config.
ParamValue: TypeAlias = Union[int, float, str]

#: Parameters for one grid point, keyed by canonical parameter name.
Params: TypeAlias = Dict[str, ParamValue]


class CSVRowDict(TypedDict):
    """
    A ``dict`` representing one row of the flat CSV summary.

    >>> rows = summary_rows(records)
    >>> rows[0]
    {
        'command': 'mean',
        'd': 2,
        'x': 1000.0,
        'y': 100.0,
        'S': 83.41,
        'S1': 83.37,
        'S2': 0.04,
        'main_term': 84.0,
        'abs_error': 0.59,
        'envelope': 1000.0,
        'ratio': 0.00059
    }
    """

    command: str
    d: Union[int, str]
    x: Union[float, str]
    y: Union[float, str]
    S: Union[float, str]
    S1: Union[float, str]
    S2: Union[float, str]
    main_term: Union[float, str]
    abs_error: Union[float, str]
    envelope: Union[float, str]
    ratio: Union[float, str]


#: Column order of the CSV summary. Stable across releases.
CSV_COLUMNS: List[str] = list(CSVRowDict.__annotations__)
