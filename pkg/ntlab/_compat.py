"""
The pydantic 1.x API, whichever major version is installed.

Result and record models are written against 1.x (validators, ``Config``,
``allow_mutation``); pydantic 2 still ships that API as ``pydantic.v1``.
"""
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import pydantic
else:
    try:
        from pydantic import v1 as pydantic
    except ImportError:  # pragma: no cover
        import pydantic

__all__ = ["pydantic"]
