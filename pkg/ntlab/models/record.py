import hashlib
import json
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from ntlab.types import Params

from ._base import LabModel


def canonical_params(params: Params) -> str:
    """
    Serialize parameters in a stable form: sorted keys, no whitespace.

    >>> canonical_params({"y": 100, "d": 2})
    '{"d":2,"y":100}'
    """
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def cache_key(command: str, params: Params, code_version: str) -> str:
    """
    Digest identifying one computation; a successful record under the same key is not recomputed.
    """
    text = "\x1f".join([command, canonical_params(params), code_version])
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def utc_timestamp() -> str:
    """
    ISO 8601 UTC timestamp with millisecond precision, e.g. ``"2024-05-22T21:24:15.333Z"``.
    """
    now = datetime.now(timezone.utc).replace(tzinfo=None)
    return now.isoformat(timespec="milliseconds") + "Z"


class ExperimentRecord(LabModel):
    """
    One persisted result row: what was run, with which parameters, and what came out.

    Records are written one JSON object per line and read back with
    :meth:`from_line`; floats round-trip exactly.

    >>> record = run_command("mean", {"d": 2, "x": 1000, "y": 100})
    >>> ExperimentRecord.from_line(record.to_line()) == record
    True
    """

    #: Dashed command name, e.g. ``"smooth-mean"``.
    command: str

    #: Canonical parameter names to values.
    params: Dict[str, Any]

    #: Computed values, keyed by field name of the result model.
    values: Dict[str, Any] = {}

    #: Result model tag, e.g. ``"mean_value_result"``.
    kind: Optional[str] = None

    envelope: Optional[float] = None
    ratio: Optional[float] = None

    code_version: str
    timestamp: str

    #: ``"ok"`` or ``"error"``.
    status: str = "ok"
    error: Optional[str] = None

    #: Exception class name when ``status == "error"``, e.g. ``"InvariantViolation"``.
    error_type: Optional[str] = None

    @property
    def key(self) -> str:
        return cache_key(self.command, self.params, self.code_version)

    def to_line(self) -> str:
        return self.json(sort_keys=True)

    @classmethod
    def from_line(cls, line: str) -> "ExperimentRecord":
        return cls.parse_obj(json.loads(line))
