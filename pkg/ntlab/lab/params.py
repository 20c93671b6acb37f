from typing import Any, Callable, Dict, Optional

from ntlab.types import Params, ParamValue
from ntlab.utils import parse_number


class InvalidParamException(ValueError):
    """
    Raised when a command, a config file or a command-line flag names an unknown
    parameter or gives it a value of the wrong kind.
    """

    def __init__(self, key: str, message: Optional[str] = None):
        super().__init__(message or key)
        #: The offending parameter, section or option name.
        self.key = key


def parse_bool(value: Any) -> bool:
    """
    >>> parse_bool("yes"), parse_bool("0")
    (True, False)
    """
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def _choice(*allowed: str) -> Callable[[Any], str]:
    def convert(value: Any) -> str:
        text = str(value).strip()
        if text not in allowed:
            raise ValueError(f"expected one of {', '.join(allowed)}; got {value!r}")
        return text

    return convert


#: Mapping of option spellings (command line, config file) to canonical parameter names
OPTIONS_TO_PARAMETERS = {
    # mean values
    "d": "d",
    "x": "x",
    "y": "y",
    "a_mode": "a_mode",
    "a-mode": "a_mode",
    "mode": "mode",
    # smoothed mean value
    "Y": "Y",
    "z": "z",
    "U": "U",
    "poisson": "poisson",
    "cross_check": "cross_check",
    "cross-check": "cross_check",
    # character statistics
    "X": "X",
    "Q": "Q",
    "M": "M",
    "k": "k",
    "q": "q",
    "p": "p",
    "j": "j",
    "convention": "convention",
    "coeffs": "coeffs",
    # verification grids
    "p_max": "p_max",
    "p-max": "p_max",
    "k_max": "k_max",
    "k-max": "k_max",
    "m_max": "m_max",
    "m-max": "m_max",
    "m_cap": "m_cap",
    "m-cap": "m_cap",
    "pairs": "pairs",
    "seed": "seed",
    # envelopes
    "theorem": "theorem",
}

#: Converter applied to every value of a canonical parameter
PARAMETER_TYPES: Dict[str, Callable[[Any], ParamValue]] = {
    "d": parse_number,
    "x": parse_number,
    "y": parse_number,
    "a_mode": _choice("all", "nonsquare"),
    "mode": _choice("auto", "character", "direct"),
    "Y": parse_number,
    "z": parse_number,
    "U": parse_number,
    "poisson": parse_bool,
    "cross_check": parse_bool,
    "X": parse_number,
    "Q": parse_number,
    "M": parse_number,
    "k": parse_number,
    "q": parse_number,
    "p": parse_number,
    "j": parse_number,
    "convention": _choice("fundamental", "nonsquare"),
    "coeffs": _choice("ones", "mobius"),
    "p_max": parse_number,
    "k_max": parse_number,
    "m_max": parse_number,
    "m_cap": parse_number,
    "pairs": parse_number,
    "seed": parse_number,
    "theorem": _choice("resd2", "cubquarsex", "libound", "resd2smooth"),
}


def option_to_param(name: str) -> str:
    try:
        return OPTIONS_TO_PARAMETERS[name]
    except KeyError:
        raise InvalidParamException(name, f"unknown parameter {name!r}")


def convert_value(name: str, value: Any) -> ParamValue:
    """
    Convert one raw value for the canonical parameter ``name``.

    Raises:
        InvalidParamException: if the value cannot be converted.
    """
    try:
        return PARAMETER_TYPES[name](value)
    except (TypeError, ValueError) as exc:
        raise InvalidParamException(name, f"{name}: {exc}") from exc


def options_to_params(options: Dict[str, Any]) -> Params:
    """
    Convert options keyed by any accepted spelling into canonical, typed parameters.

    >>> options_to_params({"a-mode": "all", "x": "1e4"})
    {'a_mode': 'all', 'x': 10000}
    """
    params: Params = {}
    for name, value in options.items():
        canonical = option_to_param(name)
        params[canonical] = convert_value(canonical, value)
    return params
