"""Reading the reconstruction CSVs: `#`-prefixed config echo, one header
line, comma-separated float rows."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

LOG_FLOOR = -16.0


@dataclass
class RunData:
    path: str
    config: dict
    columns: dict

    def col(self, name):
        try:
            return self.columns[name]
        except KeyError:
            raise ValueError(
                f"{self.path}: column {name!r} missing "
                f"(have {sorted(self.columns)})"
            ) from None


def read_run_csv(path) -> RunData:
    text = Path(path).read_text()
    config = {}
    header = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line.lstrip("#").partition("=")
            if value:
                config[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append(line.split(","))
    if header is None or not rows:
        raise ValueError(f"{path}: no data rows found")
    data = np.array([[float(v) for v in row] for row in rows])
    if data.shape[1] != len(header):
        raise ValueError(f"{path}: ragged rows vs header {header}")
    columns = {name: data[:, i] for i, name in enumerate(header)}
    return RunData(path=str(path), config=config, columns=columns)


def floored_log10(values) -> np.ndarray:
    """log10 of |values| with the machine-noise display floor."""
    with np.errstate(divide="ignore"):
        out = np.log10(np.abs(np.asarray(values, dtype=float)))
    return np.maximum(out, LOG_FLOOR)
