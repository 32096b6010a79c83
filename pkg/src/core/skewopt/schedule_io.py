# src/core/skewopt/schedule_io.py
import io
from pathlib import Path
from typing import Union

import pandas as pd

from src.core.errors import ParseError
from src.models.skew import SkewSchedule

HEADER_KEY = "period_ns"


def schedule_to_csv(sched: SkewSchedule) -> str:
    frame = pd.DataFrame(
        [(reg, skew + 0.0) for reg, skew in sorted(sched.skews.items())],
        columns=["register", "skew_ns"],
    )
    return f"{HEADER_KEY}={sched.period!r}\n" + frame.to_csv(index=False, lineterminator="\n")


def write_schedule(sched: SkewSchedule, path: Union[str, Path]) -> None:
    Path(path).write_text(schedule_to_csv(sched))


def schedule_from_csv(text: str, source: str = "") -> SkewSchedule:
    header, _, body = text.partition("\n")
    key, sep, value = header.strip().partition("=")
    if key.strip() != HEADER_KEY or not sep:
        raise ParseError(f"expected '{HEADER_KEY}=X' header", 1, source)
    try:
        period = float(value)
    except ValueError:
        raise ParseError(f"bad period {value!r}", 1, source) from None

    try:
        frame = pd.read_csv(io.StringIO(body), dtype={"register": str, "skew_ns": float},
                            float_precision="round_trip")
    except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ParseError(f"bad schedule table: {e}", None, source) from None
    if list(frame.columns) != ["register", "skew_ns"]:
        raise ParseError("schedule table needs columns register,skew_ns", 2, source)
    if frame["register"].duplicated().any():
        dup = frame.loc[frame["register"].duplicated(), "register"].iloc[0]
        raise ParseError(f"duplicate register {dup}", None, source)
    skews = {str(reg): float(skew) for reg, skew in zip(frame["register"], frame["skew_ns"])}
    bound = max((abs(s) for s in skews.values()), default=0.0)
    return SkewSchedule(skews=skews, period=period, bound=bound)


def read_schedule(path: Union[str, Path]) -> SkewSchedule:
    return schedule_from_csv(Path(path).read_text(), str(path))
