"""
Persistence for experiment records: one JSON object per line, a digest index
for skipping cached computations, and a flat CSV summary.
"""
import csv
import json
import logging
import threading
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from ntlab.models import ExperimentRecord
from ntlab.types import CSV_COLUMNS, CSVRowDict

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class RecordStore:
    """
    An append-only record file and its cache index.

    The index maps :attr:`ExperimentRecord.key` digests to 0-based line numbers
    in the record file. It is read when the store is opened and written by
    :meth:`save_index`; appends from several threads are serialised.

    Usage:
        >>> store = RecordStore("results.jsonl")
        >>> store.get(record.key) is None
        True
        >>> store.append(record)
        >>> store.save_index()
    """

    def __init__(self, path: PathLike, index_path: Optional[PathLike] = None):
        self.path = Path(path)
        self.index_path = (
            Path(index_path)
            if index_path is not None
            else self.path.with_name(self.path.name + ".index.json")
        )
        self._lock = threading.Lock()
        self._lines: List[str] = self._read_lines()
        self._index: Dict[str, int] = self._read_index()

    def __repr__(self) -> str:
        return f"<RecordStore path={str(self.path)!r} records={len(self._lines)}>"

    def __len__(self) -> int:
        return len(self._lines)

    def __contains__(self, key: str) -> bool:
        return key in self._index

    def _read_lines(self) -> List[str]:
        if not self.path.exists():
            return []
        with open(self.path, encoding="utf-8") as fp:
            return [line.rstrip("\n") for line in fp if line.strip()]

    def _read_index(self) -> Dict[str, int]:
        if self.index_path.exists():
            with open(self.index_path, encoding="utf-8") as fp:
                index: Dict[str, int] = json.load(fp)
            if all(0 <= line < len(self._lines) for line in index.values()):
                return index
            logger.warning("cache index %s does not match %s; rebuilding", self.index_path, self.path)
        return {
            ExperimentRecord.from_line(line).key: number
            for number, line in enumerate(self._lines)
        }

    def get(self, key: str) -> Optional[ExperimentRecord]:
        """
        The stored record with digest ``key``, or ``None``.
        """
        if key not in self._index:
            return None
        return ExperimentRecord.from_line(self._lines[self._index[key]])

    def records(self) -> List[ExperimentRecord]:
        return [ExperimentRecord.from_line(line) for line in self._lines]

    def append(self, record: ExperimentRecord) -> None:
        line = record.to_line()
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fp:
                fp.write(line + "\n")
            self._index[record.key] = len(self._lines)
            self._lines.append(line)

    def save_index(self) -> None:
        with self._lock:
            self.index_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.index_path, "w", encoding="utf-8") as fp:
                json.dump(self._index, fp, sort_keys=True, indent=0)


def _first(mapping: Dict[str, Any], *names: str) -> Any:
    for name in names:
        if mapping.get(name) is not None:
            return mapping[name]
    return ""


def summary_rows(records: Iterable[ExperimentRecord]) -> List[CSVRowDict]:
    """
    Flatten records into CSV rows with the columns of :data:`~ntlab.types.CSV_COLUMNS`.

    Columns a command does not produce are left empty.
    """
    rows: List[CSVRowDict] = []
    for record in records:
        params, values = record.params, record.values
        rows.append(
            {
                "command": record.command,
                "d": _first(params, "d"),
                "x": _first(params, "x", "X"),
                "y": _first(params, "y", "Y"),
                "S": _first(values, "S"),
                "S1": _first(values, "S1"),
                "S2": _first(values, "S2"),
                "main_term": _first(values, "main_term", "main"),
                "abs_error": _first(values, "abs_error"),
                "envelope": "" if record.envelope is None else record.envelope,
                "ratio": "" if record.ratio is None else record.ratio,
            }
        )
    return rows


def write_csv(path: PathLike, records: Iterable[ExperimentRecord]) -> int:
    """
    Write the CSV summary of ``records`` to ``path``, replacing it.

    Returns:
        The number of data rows written.
    """
    rows = summary_rows(records)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)  # type: ignore[arg-type]
    return len(rows)
