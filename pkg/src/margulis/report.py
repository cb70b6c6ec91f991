"""JSON reports and CSV tables.

Reports are deterministic for a fixed config except for the ``timestamp``
object (UTC time and wall-clock seconds).
"""
import csv
import datetime
import json
import math
from pathlib import Path

import numpy as np

from . import __version__

ALPHA_COLUMNS = ("word", "length", "alpha")
ANGLE_COLUMNS = ("label", "theta", "offset")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return _clean(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def make_report(command, argv, config, result, passed, started):
    elapsed = datetime.datetime.now(datetime.timezone.utc) - started
    return _clean({
        "command": command,
        "argv": list(argv),
        "version": __version__,
        "config": config.as_dict(),
        "passed": passed,
        "result": result,
        "timestamp": {"utc": started.isoformat(), "wall_time_s": elapsed.total_seconds()},
    })


def write_json(path, obj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(x) if isinstance(x, float) else x for x in row])
    return path
