from .config import SweepConfig, load_config
from .envelopes import ErrorEnvelope, check_continuity, dominance, envelope_eval
from .params import InvalidParamException
from .records import RecordStore, summary_rows, write_csv
from .runner import COMMANDS, run_command, run_sweep

__all__ = [
    "COMMANDS",
    "ErrorEnvelope",
    "InvalidParamException",
    "RecordStore",
    "SweepConfig",
    "check_continuity",
    "dominance",
    "envelope_eval",
    "load_config",
    "run_command",
    "run_sweep",
    "summary_rows",
    "write_csv",
]
