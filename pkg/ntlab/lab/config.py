"""
Sweep configuration files.

A sweep is described by an INI file::

    [sweep]
    command = mean
    out = results/mean.jsonl
    csv = results/mean.csv
    threads = 4

    [mean]
    d = 2
    x = 1e3, 1e4
    y = 1e2, 1e3

Every key of the command's section holds a comma-separated list; the grid is
the cartesian product of those lists, in the order the keys appear.
"""
import configparser
import itertools
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Union

import inflection

from ntlab._compat import pydantic
from ntlab.models._base import LabModel
from ntlab.types import Params

from .envelopes import DEFAULT_EPS
from .params import InvalidParamException, convert_value, option_to_param

SWEEP_SECTION = "sweep"


class SweepConfig(LabModel):
    """
    One command, a parameter grid and where to put the results.
    """

    #: Dashed command name, e.g. ``"smooth-mean"``.
    command: str

    #: Canonical parameter name to the list of values it takes.
    grid: Dict[str, List[Any]] = {}

    #: Line-delimited record file; ``None`` writes records to standard output only.
    out: Optional[Path] = None

    csv: Optional[Path] = None

    #: Cache index; defaults to ``<out>.index.json``.
    cache: Optional[Path] = None

    threads: int = 1
    eps: float = DEFAULT_EPS

    @pydantic.validator("command")
    def _check_command(cls, command: str) -> str:
        from .runner import COMMANDS

        command = inflection.dasherize(command)
        if command not in COMMANDS:
            raise ValueError(f"unknown command {command!r}")
        return command

    @pydantic.validator("threads")
    def _check_threads(cls, threads: int) -> int:
        if threads < 1:
            raise ValueError(f"threads must be positive; got {threads}")
        return threads

    @property
    def cache_path(self) -> Optional[Path]:
        if self.cache is not None:
            return self.cache
        if self.out is not None:
            return self.out.with_name(self.out.name + ".index.json")
        return None

    def points(self) -> Iterator[Params]:
        """
        Yield every grid point; an empty grid yields nothing.
        """
        if not self.grid:
            return
        names = list(self.grid)
        for values in itertools.product(*(self.grid[name] for name in names)):
            yield dict(zip(names, values))

    def override(self, **changes: Any) -> "SweepConfig":
        """
        Copy with ``changes`` applied; ``grid`` entries are merged key by key.
        """
        changes = {key: value for key, value in changes.items() if value is not None}
        grid = {**self.grid, **changes.pop("grid", {})}
        return SweepConfig.parse_obj({**self.dict(), **changes, "grid": grid})


def parse_grid(section: Dict[str, str]) -> Dict[str, List[Any]]:
    """
    Parse ``name = v1, v2, ...`` entries into canonical names and typed value lists.

    Raises:
        InvalidParamException: naming the offending key.
    """
    grid: Dict[str, List[Any]] = {}
    for key, raw in section.items():
        name = option_to_param(key)
        items = [item.strip() for item in raw.split(",") if item.strip()]
        if not items:
            raise InvalidParamException(key, f"{key}: no values given")
        grid[name] = [convert_value(name, item) for item in items]
    return grid


def load_config(path: Union[str, Path], command: Optional[str] = None) -> SweepConfig:
    """
    Read a sweep configuration file.

    Args:
        path: The INI file.
        command: Use this command's section instead of the one named in ``[sweep]``.

    Raises:
        InvalidParamException: if the file is unreadable or malformed; ``key``
            names the missing or offending section or option.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        with open(path, encoding="utf-8") as fp:
            parser.read_file(fp)
    except (OSError, configparser.Error) as exc:
        raise InvalidParamException(str(path), f"cannot read {path}: {exc}") from exc

    if not parser.has_section(SWEEP_SECTION):
        raise InvalidParamException(SWEEP_SECTION, f"{path}: missing [{SWEEP_SECTION}] section")
    sweep = dict(parser[SWEEP_SECTION])
    command = command or sweep.pop("command", None)
    sweep.pop("command", None)
    if not command:
        raise InvalidParamException("command", f"{path}: no command given")

    known = set(SweepConfig.__fields__) - {"command", "grid"}
    unknown = set(sweep) - known
    if unknown:
        key = sorted(unknown)[0]
        raise InvalidParamException(key, f"{path}: unknown [{SWEEP_SECTION}] option {key!r}")

    section_name = inflection.dasherize(command)
    if parser.has_section(section_name):
        grid = parse_grid(dict(parser[section_name]))
    elif parser.has_section(inflection.underscore(section_name)):
        grid = parse_grid(dict(parser[inflection.underscore(section_name)]))
    else:
        grid = {}

    try:
        return SweepConfig(command=command, grid=grid, **sweep)
    except pydantic.ValidationError as exc:
        key = str(exc.errors()[0]["loc"][0])
        raise InvalidParamException(key, f"{path}: {exc}") from exc
