"""Compensated (Neumaier) summation for long series of floats.

Criterion slacks near equality are the quantity of interest downstream,
so running partial sums keep a first-order error term instead of relying
on plain accumulation.
"""

from __future__ import annotations

import numpy as np


def neumaier_prefix_sums(values) -> np.ndarray:
    """Prefix sums out[k] = values[0] + ... + values[k] with compensation."""
    if isinstance(values, np.ndarray):
        values = values.tolist()
    out = np.empty(len(values))
    s = 0.0
    c = 0.0
    for i, x in enumerate(values):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return out


def neumaier_suffix_sums(values) -> np.ndarray:
    """Suffix sums out[k] = values[k] + ... + values[-1] with compensation."""
    rev = np.asarray(values, dtype=float)[::-1]
    return neumaier_prefix_sums(rev)[::-1].copy()
