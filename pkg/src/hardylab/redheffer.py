"""Recurrent-inequality route: multiplier lemmas and the (c, beta) family.

Redheffer-style recurrent inequalities bound weighted partial or tail sums
through telescoping multiplier sequences (mu_i, eta_i); unlike the forward
criterion route they never require the auxiliary quantity to decay.  With
lambda = 1 and nu_n = (n - beta)/c the whole construction reduces to a
two-branch feasibility condition

    max((1 + c - beta)**(1-p),
        n**p ((n + c - beta)**(1-p) - (n - 1 - beta)**(1-p)))  <=  c**(1-p) k(p)

over n >= 2, whose smallest admissible k(p) controls the reverse-inequality
constant 1/k.  This module evaluates the lemmas on concrete sequences,
checks the feasibility conditions, solves the p = 1/2 balancing equation in
closed form, and scans (c, beta) grids for the best k.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .compsum import neumaier_prefix_sums, neumaier_suffix_sums
from .errors import (
    OutOfDomainError,
    PreconditionError,
    TailTruncationWarning,
)
from .reports import CriterionReport, Tolerances, build_report
from .sequences import WeightSequence, conjugate_exponent


@dataclass(frozen=True)
class RedhefferParams:
    """Parameters (p, c, beta) of the nu_n = (n - beta)/c multiplier family.

    Derived values: c_prime = 1/c, x = (1 - beta)/c, and optionally the
    constant k = k(p) once computed.  At beta = 1 the n = 1 multiplier
    degenerates to zero; every worked configuration keeps beta < 1.
    """

    p: float
    c: float
    beta: float
    k: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise OutOfDomainError(f"p must lie in (0, 1), got {self.p}")
        if not self.c > 0.0:
            raise OutOfDomainError(f"c must be positive, got {self.c}")
        if self.beta > 1.0:
            raise OutOfDomainError(f"beta must be <= 1, got {self.beta}")
        if self.c < self.beta:
            raise OutOfDomainError(f"need c >= beta, got c={self.c} < {self.beta}")

    @property
    def c_prime(self) -> float:
        return 1.0 / self.c

    @property
    def x(self) -> float:
        return (1.0 - self.beta) / self.c

    def nu(self, n: int) -> float:
        return (n - self.beta) / self.c

    def with_k(self, k: float) -> "RedhefferParams":
        return replace(self, k=k)


@dataclass(frozen=True)
class RecurrentSequences:
    """Multiplier pair (mu_i, eta_i) for the recurrent inequalities."""

    mu: np.ndarray
    eta: np.ndarray

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=float)
        eta = np.asarray(self.eta, dtype=float)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "eta", eta)
        if mu.shape != eta.shape:
            raise PreconditionError("mu and eta must have equal length")
        if np.any(mu <= 0.0) or np.any(eta <= 0.0):
            raise PreconditionError("multiplier sequences must be positive")

    def require_ordering(self, p: float) -> None:
        """Partial-sum regime (p < 1): mu <= eta for 0 < p < 1, mu >= eta for p < 0."""
        if 0.0 < p < 1.0:
            if np.any(self.mu > self.eta):
                raise PreconditionError("0 < p < 1 requires mu_i <= eta_i")
        elif p < 0.0:
            if np.any(self.mu < self.eta):
                raise PreconditionError("p < 0 requires mu_i >= eta_i")
        else:
            raise PreconditionError(f"lemma regime needs p < 1, p != 0; got {p}")

    def nu_forward(self, p: float) -> np.ndarray:
        """nu_i = mu_i**q - 1 with q conjugate to p."""
        return self.mu ** conjugate_exponent(p) - 1.0

    def nu_reverse(self, p: float) -> np.ndarray:
        """nu_i = mu_i**(1/(1-p)) - 1 for the tail-sum regime."""
        return self.mu ** (1.0 / (1.0 - p)) - 1.0


def _as_lambda_array(lam, length: int) -> np.ndarray:
    if isinstance(lam, WeightSequence):
        if lam.n_max < length:
            raise PreconditionError("lambda sequence shorter than needed")
        arr = lam.lam[:length]
    else:
        arr = np.asarray(lam, dtype=float)[:length]
    if len(arr) < length or np.any(arr <= 0.0):
        raise PreconditionError("lambda must be positive and long enough")
    return arr


def lemma_6_1_residual(
    lam,
    a,
    multipliers: RecurrentSequences,
    p: float,
    n: int,
) -> float:
    """RHS - LHS of the partial-sum recurrent inequality at horizon n >= 2:

        sum_{i=2}^{n-1} (mu_i - (mu_{i+1}**q - eta_{i+1}**q)**(1/q)) S_i**(1/p)
            + mu_n S_n**(1/p)
        <= (mu_2**q - eta_2**q)**(1/q) (lam_1 a_1)**(1/p)
            + sum_{i=2}^{n} eta_i (lam_i a_i)**(1/p)

    with S_n the weighted partial sums.  A nonnegative return confirms the
    instance.  When mu_i = eta_i the coefficient degenerates (for
    0 < p < 1 it blows up to +inf) and the inequality holds trivially.
    """
    if n < 2:
        raise OutOfDomainError("horizon must satisfy n >= 2")
    multipliers.require_ordering(p)
    q = conjugate_exponent(p)
    lam_arr = _as_lambda_array(lam, n)
    a_arr = np.asarray(a, dtype=float)[:n]
    if len(a_arr) < n or np.any(a_arr <= 0.0):
        raise PreconditionError("a must be positive and long enough")
    if len(multipliers.mu) < n:
        raise PreconditionError("multiplier sequences shorter than horizon")
    mu, eta = multipliers.mu, multipliers.eta
    S = neumaier_prefix_sums(lam_arr * a_arr)

    def coef(i: int) -> float:
        d = mu[i - 1] ** q - eta[i - 1] ** q
        if d < 0.0:
            raise PreconditionError("multiplier ordering violated numerically")
        if d == 0.0:
            return math.inf if q < 0.0 else 0.0
        return d ** (1.0 / q)

    inv_p = 1.0 / p
    lhs = mu[n - 1] * S[n - 1] ** inv_p
    for i in range(2, n):
        lhs += (mu[i - 1] - coef(i + 1)) * S[i - 1] ** inv_p
    rhs = coef(2) * (lam_arr[0] * a_arr[0]) ** inv_p
    rhs += math.fsum(
        eta[i - 1] * (lam_arr[i - 1] * a_arr[i - 1]) ** inv_p for i in range(2, n + 1)
    )
    return rhs - lhs


class StepBound(NamedTuple):
    lhs: float
    rhs: float
    residual: float


def lemma_6_2_step(mu: float, eta: float, p: float, t: float) -> StepBound:
    """Single-step tail-sum bound: for mu >= eta > 0, 0 < p < 1, t >= 0,

        mu (1+t)**p - eta t**p >= (mu**(1/(1-p)) - eta**(1/(1-p)))**(1-p).
    """
    if not 0.0 < p < 1.0:
        raise PreconditionError(f"needs 0 < p < 1, got {p}")
    if not (mu >= eta > 0.0):
        raise PreconditionError("needs mu >= eta > 0")
    if t < 0.0:
        raise OutOfDomainError("t must be nonnegative")
    lhs = mu * (1.0 + t) ** p - eta * t**p
    base = mu ** (1.0 / (1.0 - p)) - eta ** (1.0 / (1.0 - p))
    rhs = max(base, 0.0) ** (1.0 - p)
    return StepBound(lhs, rhs, lhs - rhs)


def lemma_6_2_residual(
    lam,
    a,
    multipliers: RecurrentSequences,
    p: float,
    n: int,
) -> float:
    """LHS - RHS of the tail-sum recurrent inequality at horizon n >= 2:

        mu_1 S_1**p
          + sum_{i=2}^{n} (mu_i - D_{i-1}) S_i**p - D_n S_{n+1}**p
        >= sum_{i=1}^{n} eta_i lam_i**p a_i**p,

    D_i = (mu_i**(1/(1-p)) - eta_i**(1/(1-p)))**(1-p) and S_k the tail sums
    of lam*a.  Inputs are finite-support truncations; if the last retained
    term is not negligible a TailTruncationWarning is emitted.
    """
    if not 0.0 < p < 1.0:
        raise PreconditionError(f"needs 0 < p < 1, got {p}")
    if n < 2:
        raise OutOfDomainError("horizon must satisfy n >= 2")
    if np.any(multipliers.mu < multipliers.eta):
        raise PreconditionError("tail-sum regime requires mu_i >= eta_i")
    a_arr = np.asarray(a, dtype=float)
    length = len(a_arr)
    if n > length:
        raise PreconditionError("horizon exceeds the truncated input")
    if np.any(a_arr <= 0.0):
        raise PreconditionError("a must be positive")
    lam_arr = _as_lambda_array(lam, length)
    if len(multipliers.mu) < n:
        raise PreconditionError("multiplier sequences shorter than horizon")
    mu, eta = multipliers.mu, multipliers.eta
    tails = neumaier_suffix_sums(lam_arr * a_arr)
    if lam_arr[-1] * a_arr[-1] > 1e-8 * tails[0]:
        warnings.warn(
            "last retained term is not negligible; tail truncation may bias S",
            TailTruncationWarning,
            stacklevel=2,
        )

    def S(k: int) -> float:
        return float(tails[k - 1]) if k <= length else 0.0

    e = 1.0 / (1.0 - p)

    def D(i: int) -> float:
        base = mu[i - 1] ** e - eta[i - 1] ** e
        return max(base, 0.0) ** (1.0 - p)

    lhs = mu[0] * S(1) ** p - D(n) * S(n + 1) ** p
    lhs += math.fsum((mu[i - 1] - D(i - 1)) * S(i) ** p for i in range(2, n + 1))
    rhs = math.fsum(
        eta[i - 1] * lam_arr[i - 1] ** p * a_arr[i - 1] ** p for i in range(1, n + 1)
    )
    return lhs - rhs


def _first_branch(p: float, c: float, beta: float) -> float:
    return (1.0 + c - beta) ** (1.0 - p)


def _second_branch(p: float, c: float, beta: float, n) -> np.ndarray:
    """n**p ((n + c - beta)**(1-p) - (n - 1 - beta)**(1-p)), cancellation-safe."""
    n = np.asarray(n, dtype=float)
    e = 1.0 - p
    low = n - 1.0 - beta
    gap = c + 1.0
    safe_low = np.where(low > 0.0, low, 1.0)
    diff = np.where(
        low > 0.0,
        safe_low**e * np.expm1(e * np.log1p(gap / safe_low)),
        (low + gap) ** e,
    )
    return n**p * diff


def condition_6_49_check(
    params: RedhefferParams,
    n_max: int,
    k: float | None = None,
    tol: Tolerances | None = None,
) -> CriterionReport:
    """Two-branch feasibility condition over 2 <= n <= n_max (non-strict).

    Also records the reduction cross-check: whenever the slope condition
    (see condition_6_50_check) holds, the supremum of the n-branch over
    n >= 2 is attained at n = 2, so the whole family follows from the
    n = 2 case.
    """
    k_val = params.k if k is None else k
    if k_val is None:
        raise OutOfDomainError("a constant k is required (pass k or params.k)")
    if n_max < 2:
        raise OutOfDomainError("need n_max >= 2")
    p, c, beta = params.p, params.c, params.beta
    rhs = c ** (1.0 - p) * k_val
    ns = np.arange(2, n_max + 1)
    b1 = _first_branch(p, c, beta)
    b2 = _second_branch(p, c, beta, ns)
    values = np.maximum(b1, b2)
    slacks = (rhs - values) / rhs
    sup2 = float(np.max(b2))
    n2 = float(b2[0])
    meta = {
        "first_branch": b1,
        "n2_branch": n2,
        "sup_second_branch": sup2,
        "argmax_n": int(ns[int(np.argmax(b2))]),
        "large_n_limit": (1.0 - p) * (1.0 + c),
        "slope_condition": condition_6_50_check(params, k_val, tol),
        "reduction_agrees": sup2 <= n2 * (1.0 + 1e-12) + 1e-300,
        "rhs": rhs,
    }
    return build_report(
        f"6.49[p={p},c={c},beta={beta}]",
        "6.49",
        2,
        slacks,
        strict=False,
        tol=tol,
        log_rhs=np.full(len(ns), math.log(rhs)),
        meta=meta,
    )


def condition_6_50_check(
    params: RedhefferParams,
    k: float | None = None,
    tol: Tolerances | None = None,
) -> bool:
    """Slope condition (1 - p)(1 + c) < c**(1-p) k, strict.

    Decided with the standard relative tolerance so an exact-equality
    configuration (the boundary route) reports False deterministically.
    """
    k_val = params.k if k is None else k
    if k_val is None:
        raise OutOfDomainError("a constant k is required (pass k or params.k)")
    tol = tol or Tolerances()
    lhs = (1.0 - params.p) * (1.0 + params.c)
    rhs = params.c ** (1.0 - params.p) * k_val
    return rhs - lhs > tol.tol_abs + tol.tol_rel * abs(rhs)


def condition_6_54_check(p: float, beta: float) -> bool:
    """Curvature condition beta < 1/(2p) - 1 for the equality route, 0 < p < 1/2."""
    if not 0.0 < p < 0.5:
        raise OutOfDomainError(f"needs 0 < p < 1/2, got {p}")
    return beta < 1.0 / (2.0 * p) - 1.0


def shape_function(params: RedhefferParams, k: float, x: float) -> float:
    """f(x) = (1 + (c-beta)x)**(1-p) - (1 - (1+beta)x)**(1-p) - c**(1-p) k x.

    On 0 <= x <= 1/2, f(x) <= min(f(0), f(1/2)) under the route conditions;
    setting x = 1/n turns f <= 0 into the n-branch of the feasibility
    condition.
    """
    p, c, beta = params.p, params.c, params.beta
    return (
        (1.0 + (c - beta) * x) ** (1.0 - p)
        - (1.0 - (1.0 + beta) * x) ** (1.0 - p)
        - c ** (1.0 - p) * k * x
    )


def solve_x_half(c_prime: float) -> float:
    """Root x = (1 - beta)/c of the p = 1/2 balancing equation

        (1 + x)**(1/2) = 2**(1/2) ((1 + c' + x)**(1/2) - x**(1/2)),

    in closed form: x = (sqrt((10+4c')**2 + 28 (1+2c')**2) - (10+4c'))/14.
    """
    if c_prime < 0.0:
        raise OutOfDomainError("c' must be nonnegative")
    u = 10.0 + 4.0 * c_prime
    v = 1.0 + 2.0 * c_prime
    return (math.sqrt(u * u + 28.0 * v * v) - u) / 14.0


def k_of_p(params: RedhefferParams, n_max: int) -> float:
    """Smallest k making the feasibility condition pass over 2 <= n <= n_max."""
    if n_max < 2:
        raise OutOfDomainError("need n_max >= 2")
    p, c, beta = params.p, params.c, params.beta
    ns = np.arange(2, n_max + 1)
    sup = max(_first_branch(p, c, beta), float(np.max(_second_branch(p, c, beta, ns))))
    return sup / c ** (1.0 - p)


def default_c_grid() -> np.ndarray:
    return np.round(np.arange(0.1, 10.0 + 1e-9, 0.01), 10)


def default_beta_grid(p: float) -> np.ndarray:
    cap = min(1.0, 1.0 / (2.0 * p) - 1.0) if p < 0.5 else 1.0
    return np.round(np.arange(-1.0, cap - 1e-12, 0.005), 10)


@dataclass(eq=False)
class ScanResult:
    """Grid scan outcome; ``best`` is None when no grid point is feasible."""

    p: float
    c_grid: np.ndarray = field(repr=False)
    beta_grid: np.ndarray = field(repr=False)
    k: np.ndarray = field(repr=False)
    feasible: np.ndarray = field(repr=False)
    slope_ok: np.ndarray = field(repr=False)
    curvature_ok: np.ndarray = field(repr=False)
    best: RedhefferParams | None = None
    best_report: CriterionReport | None = None

    @property
    def feasible_count(self) -> int:
        return int(np.count_nonzero(self.feasible))

    @property
    def n_points(self) -> int:
        return int(self.feasible.size)

    def iter_rows(self):
        """Yield one flat record per grid point (for CSV export)."""
        for i, c in enumerate(self.c_grid):
            for j, b in enumerate(self.beta_grid):
                yield {
                    "c": float(c),
                    "beta": float(b),
                    "k": float(self.k[i, j]),
                    "slope_ok": bool(self.slope_ok[i, j]),
                    "curvature_ok": bool(self.curvature_ok[i, j]),
                    "feasible": bool(self.feasible[i, j]),
                }


def scan_params(
    p: float,
    c_grid=None,
    beta_grid=None,
    n_max: int = 10000,
    tol: Tolerances | None = None,
) -> ScanResult:
    """Scan (c, beta) for the smallest k among feasible points.

    Per point, k is the supremum of the feasibility condition over all n:
    the first branch, the n = 2 value of the second branch, and the
    large-n limit (1-p)(1+c) of the second branch (the reduction argument
    pins the supremum to these).  A point is feasible when the slope
    condition then holds strictly or, on the equality route with
    p < 1/2, the curvature condition does.  The best point is re-verified
    directly against the full n <= n_max family.
    """
    if not 0.0 < p < 1.0:
        raise OutOfDomainError(f"p must lie in (0, 1), got {p}")
    tol = tol or Tolerances()
    c_vals = np.asarray(default_c_grid() if c_grid is None else list(c_grid), float)
    b_vals = np.asarray(
        default_beta_grid(p) if beta_grid is None else list(beta_grid), float
    )
    if len(c_vals) == 0 or len(b_vals) == 0:
        raise OutOfDomainError("grids must be nonempty")
    C = c_vals[:, None]
    B = b_vals[None, :]
    valid = (C > 0.0) & (C >= B) & (B <= 1.0)
    e = 1.0 - p
    b1 = (1.0 + C - B) ** e
    low = 1.0 - B
    safe_low = np.where(low > 0.0, low, 1.0)
    diff = np.where(
        low > 0.0,
        safe_low**e * np.expm1(e * np.log1p((C + 1.0) / safe_low)),
        (low + C + 1.0) ** e,
    )
    b2 = 2.0**p * diff
    limit = np.broadcast_to((1.0 - p) * (1.0 + C), b2.shape)
    with np.errstate(invalid="ignore"):
        k = np.maximum(np.maximum(b1, b2), limit) / C**e
    rhs = C**e * k
    slope_ok = rhs - (1.0 - p) * (1.0 + C) > tol.tol_abs + tol.tol_rel * np.abs(rhs)
    if p < 0.5:
        curvature_ok = np.broadcast_to(B < 1.0 / (2.0 * p) - 1.0, k.shape)
    else:
        curvature_ok = np.zeros_like(k, dtype=bool)
    feasible = valid & (slope_ok | curvature_ok)
    result = ScanResult(
        p=p,
        c_grid=c_vals,
        beta_grid=b_vals,
        k=k,
        feasible=feasible,
        slope_ok=slope_ok & valid,
        curvature_ok=np.asarray(curvature_ok & valid),
    )
    if result.feasible_count:
        masked = np.where(feasible, k, np.inf)
        i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
        best = RedhefferParams(
            p=p, c=float(c_vals[i]), beta=float(b_vals[j]), k=float(k[i, j])
        )
        result.best = best
        result.best_report = condition_6_49_check(best, n_max, tol=tol)
    return result
