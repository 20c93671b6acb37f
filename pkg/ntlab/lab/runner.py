"""
The command registry and the sweep runner.

Every command is a function taking canonical parameters and returning an
:class:`Outcome`. :func:`run_command` turns one outcome into an
:class:`~ntlab.models.ExperimentRecord`; :func:`run_sweep` does so for every
point of a :class:`~ntlab.lab.config.SweepConfig`, skipping points whose
records are already cached.
"""
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple, Union

import inflection

import ntlab
from ntlab.arith import mobius_table
from ntlab.characters import (
    build_table,
    jutila_statistic,
    large_sieve_statistic,
    polya_vinogradov_check,
    prime_char_sum_statistic,
)
from ntlab.gauss_poisson import (
    POISSON_REL_TOL,
    make_window,
    poisson_identity_check,
    smoothed_mean,
    verify_gauss_sums,
)
from ntlab.models import ExperimentRecord
from ntlab.models._base import LabModel
from ntlab.models.record import cache_key, utc_timestamp
from ntlab.primes import primes_up_to
from ntlab.residue import CHARACTER_ORDERS, mean_value, verify_residue_definitions
from ntlab.types import Params
from ntlab.utils import InvariantViolation

from .config import SweepConfig
from .envelopes import DEFAULT_EPS, envelope_eval, eps_factor
from .params import InvalidParamException
from .records import RecordStore, write_csv

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    #: A result model, or a plain ``dict`` for aggregate commands.
    result: Union[LabModel, Dict[str, Any]]
    envelope: Optional[float] = None
    ratio: Optional[float] = None
    #: Record ``kind`` for plain-``dict`` results.
    kind: Optional[str] = None


Handler = Callable[..., Outcome]


class Command(NamedTuple):
    name: str
    handler: Handler
    required: Tuple[str, ...]
    optional: Tuple[str, ...]
    defaults: Params


#: Dashed command name to its definition.
COMMANDS: Dict[str, Command] = {}


def command(
    required: Tuple[str, ...] = (),
    optional: Tuple[str, ...] = (),
    **defaults: Any,
) -> Callable[[Handler], Handler]:
    """
    Register a handler under the dashed form of its name, so ``_smooth_mean``
    becomes the ``smooth-mean`` command.
    """

    def decorator(func: Handler) -> Handler:
        name = inflection.dasherize(func.__name__.lstrip("_"))
        COMMANDS[name] = Command(name, func, required, optional, defaults)
        return func

    return decorator


def validate_params(name: str, params: Params) -> Params:
    """
    Check ``params`` against the command's signature and fill in defaults.

    Raises:
        InvalidParamException: for an unknown command, a missing required
            parameter, or a parameter the command does not take.
    """
    name = inflection.dasherize(name)
    try:
        cmd = COMMANDS[name]
    except KeyError:
        raise InvalidParamException("command", f"unknown command {name!r}")
    for key in cmd.required:
        if key not in params:
            raise InvalidParamException(key, f"{name}: missing required parameter {key!r}")
    accepted = set(cmd.required) | set(cmd.optional) | set(cmd.defaults)
    for key in params:
        if key not in accepted:
            raise InvalidParamException(key, f"{name}: unexpected parameter {key!r}")
    return {**cmd.defaults, **params}


def _mean_envelope(d: int, x: float, y: float, eps: float) -> float:
    if d == 2:
        return envelope_eval("resd2", x, y)
    if d in (3, 4, 6):
        return envelope_eval("cubquarsex", x, y) * eps_factor(x, y, eps)
    return envelope_eval("libound", x, y, d)


@command(required=("d", "x", "y"), a_mode="all", mode="auto")
def _mean(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    d = int(params["d"])
    result = mean_value(
        d,
        params["x"],  # type: ignore[arg-type]
        params["y"],  # type: ignore[arg-type]
        a_mode=params["a_mode"],  # type: ignore[arg-type]
        mode=params["mode"],  # type: ignore[arg-type]
        workers=workers,
    )
    envelope = _mean_envelope(d, result.x, result.y, eps)
    return Outcome(result, envelope, result.abs_error / envelope)


@command(required=("x", "Y"), optional=("z", "U"), poisson=False, cross_check=True)
def _smooth_mean(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    result = smoothed_mean(
        params["x"],  # type: ignore[arg-type]
        params["Y"],  # type: ignore[arg-type]
        z=params.get("z"),  # type: ignore[arg-type]
        U=params.get("U"),  # type: ignore[arg-type]
        poisson=bool(params["poisson"]),
        cross_check=bool(params["cross_check"]),
    )
    envelope = envelope_eval("resd2smooth", result.x, result.Y)
    return Outcome(result, envelope, result.abs_error / envelope)


@command(required=("X", "Y"), convention="fundamental")
def _jutila(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    report = jutila_statistic(
        int(params["X"]),
        int(params["Y"]),
        params["convention"],  # type: ignore[arg-type]
    )
    envelope = report.X * report.Y * math.log(report.X) ** 2
    return Outcome(report, envelope, report.bound_ratio)


def _coefficients(M: int, kind: str) -> Dict[int, int]:
    mu = mobius_table(M + 1, 2 * M + 1)
    return {
        M + 1 + offset: (1 if kind == "ones" else int(value))
        for offset, value in enumerate(mu.tolist())
        if value
    }


@command(required=("Q", "M", "k"), coeffs="ones")
def _large_sieve(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    M = int(params["M"])
    coeffs = _coefficients(M, str(params["coeffs"]))
    report = large_sieve_statistic(int(params["Q"]), M, int(params["k"]), coeffs)
    return Outcome(report, report.envelope, report.ratio)


def _orders(params: Params) -> Tuple[int, ...]:
    return (int(params["d"]),) if "d" in params else CHARACTER_ORDERS


@command(required=("p_max",), optional=("d",))
def _polya_verify(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    worst = None
    checked = 0
    for p in primes_up_to(params["p_max"]).tolist():  # type: ignore[arg-type]
        if p == 2:
            continue
        for d in _orders(params):
            if (p - 1) % d:
                continue
            report = polya_vinogradov_check(p, d)
            checked += 1
            if worst is None or report.max_ratio > worst.max_ratio:
                worst = report
    if worst is None:
        return Outcome({"checked": 0}, kind="polya_vinogradov_report")
    if worst.max_ratio >= 1:
        raise InvariantViolation(
            f"Pólya–Vinogradov ratio {worst.max_ratio:.4f} >= 1 at p={worst.p}, d={worst.d}"
        )
    values = {**json.loads(worst.json()), "checked": checked}
    return Outcome(values, ratio=worst.max_ratio, kind=worst.kind())


@command(required=("k_max", "m_max"), pairs=200, seed=0)
def _gauss_verify(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    check = verify_gauss_sums(
        int(params["k_max"]), int(params["m_max"]), int(params["pairs"]), int(params["seed"])
    )
    if check.failures or check.multiplicativity_failures:
        raise InvariantViolation(
            f"{len(check.failures)} table mismatches and "
            f"{len(check.multiplicativity_failures)} multiplicativity failures"
        )
    return Outcome(check)


@command(required=("k", "X", "z", "U"), optional=("m_cap",))
def _poisson_verify(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    m_cap = params.get("m_cap")
    check = poisson_identity_check(
        int(params["k"]),
        params["X"],  # type: ignore[arg-type]
        params["z"],  # type: ignore[arg-type]
        make_window(params["U"]),  # type: ignore[arg-type]
        m_cap=None if m_cap is None else int(m_cap),
    )
    if check.rel_err > POISSON_REL_TOL:
        raise InvariantViolation(f"Poisson sides differ: rel_err={check.rel_err:.3g}")
    return Outcome(check, ratio=check.rel_err)


@command(required=("q", "d", "j", "X"))
def _prime_char_sum(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    table = build_table(int(params["q"]), int(params["d"]))
    report = prime_char_sum_statistic(table, int(params["j"]), params["X"])  # type: ignore[arg-type]
    return Outcome(report, ratio=report.grh_ratio)


@command(required=("p_max",), optional=("d",))
def _residue_verify(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    check = verify_residue_definitions(int(params["p_max"]), _orders(params))
    if check.failure_count:
        raise InvariantViolation(f"{check.failure_count} disagreements, first at {check.failures[0]}")
    return Outcome(check)


@command(required=("theorem", "x", "y"), d=2)
def _envelope(params: Params, *, eps: float, workers: Optional[int]) -> Outcome:
    value = envelope_eval(
        params["theorem"],  # type: ignore[arg-type]
        params["x"],  # type: ignore[arg-type]
        params["y"],  # type: ignore[arg-type]
        int(params["d"]),
    )
    factor = eps_factor(params["x"], params["y"], eps)  # type: ignore[arg-type]
    values = {
        "theorem": params["theorem"],
        "value": value,
        "eps": eps,
        "eps_factor": factor,
        "value_with_eps": value * factor,
    }
    return Outcome(values, envelope=value, kind="envelope")


def run_command(
    name: str,
    params: Params,
    *,
    eps: float = DEFAULT_EPS,
    workers: Optional[int] = None,
) -> ExperimentRecord:
    """
    Run one command at one parameter point.

    Raises:
        InvalidParamException: if ``params`` do not fit the command.
        InvariantViolation: if a verify command finds a failure.
    """
    params = validate_params(name, params)
    cmd = COMMANDS[inflection.dasherize(name)]
    logger.debug("running %s %s", cmd.name, params)
    outcome = cmd.handler(params, eps=eps, workers=workers)
    if isinstance(outcome.result, LabModel):
        values = json.loads(outcome.result.json())
        kind = outcome.kind or outcome.result.kind()
    else:
        values = json.loads(json.dumps(outcome.result))
        kind = outcome.kind
    return ExperimentRecord(
        command=cmd.name,
        params=params,
        values=values,
        kind=kind,
        envelope=outcome.envelope,
        ratio=outcome.ratio,
        code_version=ntlab.__version__,
        timestamp=utc_timestamp(),
    )


def execute_point(
    name: str,
    params: Params,
    *,
    eps: float = DEFAULT_EPS,
    workers: Optional[int] = None,
) -> ExperimentRecord:
    """
    Like :func:`run_command`, but a failure becomes a record with ``status="error"``.
    """
    try:
        return run_command(name, params, eps=eps, workers=workers)
    except InvalidParamException:
        raise
    except Exception as exc:
        logger.warning("%s %s failed: %s", name, params, exc)
        return ExperimentRecord(
            command=inflection.dasherize(name),
            params=params,
            code_version=ntlab.__version__,
            timestamp=utc_timestamp(),
            status="error",
            error=str(exc),
            error_type=type(exc).__name__,
        )


def run_sweep(config: SweepConfig) -> List[ExperimentRecord]:
    """
    Run every grid point of ``config`` and return the records in grid order.

    Points whose ``(command, parameters, code_version)`` digest is already in
    the cache index with a successful record are not recomputed; failed points
    run again. New records are appended to ``config.out`` in grid order, the
    index is rewritten, and the CSV summary (if requested) is regenerated from
    all returned records.

    Raises:
        InvalidParamException: if any grid point does not fit the command; no
            point is run in that case.
    """
    points = [validate_params(config.command, point) for point in config.points()]
    store = RecordStore(config.out, config.cache_path) if config.out is not None else None
    keys = [cache_key(config.command, point, ntlab.__version__) for point in points]
    records: Dict[int, ExperimentRecord] = {}
    pending: List[int] = []
    for i, key in enumerate(keys):
        cached = store.get(key) if store is not None else None
        if cached is not None and cached.status == "ok":
            records[i] = cached
        else:
            pending.append(i)
    logger.info(
        "%s: %d points, %d cached, %d to run", config.command, len(points), len(records), len(pending)
    )

    # a lone point gets the whole worker budget; otherwise parallelism is across points
    workers = config.threads if len(pending) == 1 else None
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        futures = {
            i: pool.submit(execute_point, config.command, points[i], eps=config.eps, workers=workers)
            for i in pending
        }
        for i, future in futures.items():
            records[i] = future.result()

    if store is not None:
        for i in pending:
            store.append(records[i])
        store.save_index()
    ordered = [records[i] for i in range(len(points))]
    if config.csv is not None:
        write_csv(config.csv, ordered)
    return ordered
