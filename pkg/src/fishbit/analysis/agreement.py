# fishbit/analysis/agreement.py
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from fishbit.errors import DegenerateInput


@dataclass(frozen=True)
class Agreement:
    pearson_r: float
    slope: float
    intercept: float
    r2: float
    n: int

    def as_dict(self) -> dict:
        return asdict(self)


def agreement(xs, ys) -> Agreement:
    """Pearson correlation and least-squares line of ``ys`` on ``xs``."""
    x = np.asarray(xs, dtype=float).reshape(-1)
    y = np.asarray(ys, dtype=float).reshape(-1)
    if x.size != y.size:
        raise DegenerateInput(f"unpaired series ({x.size} vs {y.size})")
    if x.size < 3:
        raise DegenerateInput(f"{x.size} pairs; need at least 3")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise DegenerateInput("a series has zero variance")

    fit = stats.linregress(x, y)
    return Agreement(
        pearson_r=float(fit.rvalue),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r2=float(fit.rvalue) ** 2,
        n=int(x.size),
    )
