from typing import Any, ClassVar, Dict, Iterable, Optional

import inflection
from typing_extensions import Self as SelfType

from ntlab._compat import pydantic
from ntlab.utils import _append_docstring_text


class LabModel(pydantic.BaseModel):
    """
    Base model for every value ntlab computes, persists or reads back.
    """

    class Config:
        # Ignore field names we don't recognize, so records written by a newer
        # version can still be read by an older one.
        extra = "ignore"

        # Results are values; nothing downstream should edit them in place.
        allow_mutation = False

        # Allow numpy scalars and similar through validators without coercion surprises.
        arbitrary_types_allowed = True

        # We'll assume this in a couple different places
        underscore_attrs_are_private = True

    _raw: Any = pydantic.PrivateAttr()

    @classmethod
    def parse_obj(cls, obj: Any) -> SelfType:
        instance = super().parse_obj(obj)
        instance._raw = obj
        return instance

    @classmethod
    def kind(cls) -> str:
        """
        The tag written next to a serialized instance, e.g. ``mean_value_result``.
        """
        return inflection.underscore(cls.__name__)


class ExactModel(LabModel):
    """
    Mix-in for results that carry exact integer numerators alongside their floats.

    Subclasses pass ``exact=[...]`` to name the integer fields that the float
    fields were derived from. :meth:`exact_values` returns them as a ``dict``
    so that two evaluation paths can be compared with ``==``.
    """

    __exact: ClassVar[Optional[Iterable[str]]] = None

    def __init_subclass__(cls, **kwargs: Any) -> None:
        cls.__exact = kwargs.pop("exact", cls.__exact)
        if cls.__exact:
            _append_docstring_text(
                cls,
                "The following fields are exact integers: "
                + ", ".join(f"``{field}``" for field in cls.__exact),
            )
        super().__init_subclass__(**kwargs)

    def exact_values(self) -> Dict[str, int]:
        """
        Return the exact integer fields of this result.
        """
        return {name: getattr(self, name) for name in (self.__exact or ())}
