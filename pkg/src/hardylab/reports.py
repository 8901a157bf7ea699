"""Report types shared by the criterion checkers.

A criterion verdict is decided per index from the signed slack
(RHS - LHS)/RHS: a strict inequality holds at n only when the slack
clears tol_rel (plus tol_abs scaled by RHS), a non-strict one when it
stays above the negated threshold.  Reports carry the verified horizon
and a tail-trend diagnostic; they are finite-horizon evidence, not
proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfDomainError

FINITE_HORIZON_NOTE = (
    "finite-horizon verification: criteria quantified over all n are "
    "checked up to n_max with a tail-trend diagnostic; this is evidence, "
    "not a proof"
)


@dataclass(frozen=True)
class Tolerances:
    tol_abs: float = 0.0
    tol_rel: float = 1e-12

    def __post_init__(self) -> None:
        if self.tol_abs < 0.0 or self.tol_rel < 0.0:
            raise OutOfDomainError("tolerances must be nonnegative")


@dataclass(frozen=True)
class TargetConstant:
    """The constant U on the bounding side of a criterion inequality."""

    U: float
    description: str = ""

    def __post_init__(self) -> None:
        if not self.U > 0.0:
            raise OutOfDomainError("target constant must be positive")


@dataclass(eq=False)
class CriterionReport:
    """Verdict of a finite per-index criterion check.

    ``min_slack`` is the worst signed slack over the range (it is -inf at
    an index whose bounding side collapses to a nonpositive value);
    ``first_failure`` is set exactly when ``holds`` is False.
    """

    name: str
    ref: str
    n_lo: int
    n_hi: int
    holds: bool
    min_slack: float
    first_failure: int | None
    tail_trend: str
    exploratory: bool = False
    slacks: np.ndarray | None = field(default=None, repr=False)
    meta: dict = field(default_factory=dict, repr=False)

    def slack_at(self, n: int) -> float:
        if self.slacks is None:
            raise OutOfDomainError("per-index slacks were not retained")
        if not self.n_lo <= n <= self.n_hi:
            raise OutOfDomainError(f"index {n} outside checked range")
        return float(self.slacks[n - self.n_lo])

    def summary(self) -> str:
        verdict = (
            "holds" if self.holds else f"fails first at n={self.first_failure}"
        )
        tag = " [exploratory]" if self.exploratory else ""
        return (
            f"{self.name}: {verdict} (verified up to n_max={self.n_hi}, "
            f"min_slack={self.min_slack:.3e}, tail_trend={self.tail_trend}){tag}"
        )


def classify_tail_trend(slacks: np.ndarray, n_lo: int) -> str:
    """Trend of the slack over the last decade of checked indices."""
    n_hi = n_lo + len(slacks) - 1
    if n_hi < n_lo + 9:
        return "flat"
    start = max(n_lo, n_hi // 10)
    seg = slacks[start - n_lo :]
    a, b = float(seg[0]), float(seg[-1])
    if not (np.isfinite(a) and np.isfinite(b)):
        return "degrading"
    scale = max(abs(a), abs(b), 1e-300)
    if b - a > 0.01 * scale:
        return "improving"
    if a - b > 0.01 * scale:
        return "degrading"
    return "flat"


def build_report(
    name: str,
    ref: str,
    n_lo: int,
    slacks: np.ndarray,
    *,
    strict: bool,
    tol: Tolerances | None = None,
    exploratory: bool = False,
    log_rhs: np.ndarray | None = None,
    meta: dict | None = None,
) -> CriterionReport:
    """Assemble a CriterionReport from per-index slacks.

    ``log_rhs`` is only needed when tol_abs > 0, to convert the absolute
    tolerance into slack units index by index.
    """
    tol = tol or Tolerances()
    slacks = np.asarray(slacks, dtype=float)
    if tol.tol_abs > 0.0 and log_rhs is not None:
        thr = tol.tol_rel + tol.tol_abs * np.exp(-np.asarray(log_rhs, dtype=float))
    else:
        thr = np.full(len(slacks), tol.tol_rel)
    ok = slacks > thr if strict else slacks >= -thr
    holds = bool(np.all(ok))
    first_failure = None if holds else int(n_lo + np.argmin(ok))
    return CriterionReport(
        name=name,
        ref=ref,
        n_lo=n_lo,
        n_hi=n_lo + len(slacks) - 1,
        holds=holds,
        min_slack=float(np.min(slacks)) if len(slacks) else float("nan"),
        first_failure=first_failure,
        tail_trend=classify_tail_trend(slacks, n_lo),
        exploratory=exploratory,
        slacks=slacks,
        meta=meta or {},
    )
