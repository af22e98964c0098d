"""Statistical and information-theoretic measures encoded by summary polar diagrams.

All reductions run through :func:`math.fsum`, which is exactly rounded and
therefore independent of observation order: permuting the input pairs yields
bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInputError,
    InvariantError,
    LengthMismatchError,
    NegativeRadiusError,
    ZeroVarianceError,
)

#: Sentinel for BinningConfig.bin_count: resolve to ceil(sqrt(n)).
AUTO = "auto"

#: Relative tolerance for the law-of-cosines identities linking the measures.
IDENTITY_RTOL = 1e-9

#: Absolute slack allowed on mi <= min(h_ref, h_model).
MI_BOUND_ATOL = 1e-12


def identity_residual(lhs: float, rhs: float) -> float:
    """Residual |lhs - rhs| normalized by max(1, |lhs|, |rhs|)."""
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


@dataclass(frozen=True)
class SampleVector:
    """One named numeric series (a model or the reference) over shared observations."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.name:
            raise InvariantError("sample vector needs a non-empty name")
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 2:
            raise InvariantError(f"series {self.name!r} needs at least 2 values, got {len(vals)}")
        for i, v in enumerate(vals):
            if not math.isfinite(v):
                raise InvariantError(f"series {self.name!r} has non-finite value at index {i}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class TaylorMetrics:
    """Second-order summary of a model against the reference.

    sigma_* are population standard deviations (1/n), correlation is Pearson's
    R clamped to [-1, 1], and crmse is the centered root mean squared error.
    """

    sigma_ref: float
    sigma_model: float
    correlation: float
    crmse: float

    def __post_init__(self):
        if self.sigma_ref < 0 or self.sigma_model < 0 or self.crmse < 0:
            raise InvariantError("sigma and crmse must be non-negative")
        if not -1.0 <= self.correlation <= 1.0:
            raise InvariantError(f"correlation {self.correlation} outside [-1, 1]")
        lhs = self.crmse**2
        rhs = (
            self.sigma_ref**2
            + self.sigma_model**2
            - 2.0 * self.sigma_ref * self.sigma_model * self.correlation
        )
        if identity_residual(lhs, rhs) > IDENTITY_RTOL:
            raise InvariantError(
                f"crmse^2 = {lhs} does not match cosine-law value {rhs}"
            )


@dataclass(frozen=True)
class InfoMetrics:
    """Information-theoretic summary of a model against the reference.

    Entropies and mutual information are in bits (or the configured log base).
    ``degenerate`` marks pairs where either marginal entropy is zero; smi and
    nmi are then 0 by convention.
    """

    h_ref: float
    h_model: float
    mi: float
    smi: float
    nmi: float
    vi: float
    rvi: float
    degenerate: bool = False

    def __post_init__(self):
        if min(self.h_ref, self.h_model, self.mi, self.vi, self.rvi) < 0:
            raise InvariantError("entropy-based measures must be non-negative")
        if self.vi != self.h_ref + self.h_model - 2.0 * self.mi:
            raise InvariantError("vi must equal h_ref + h_model - 2*mi exactly")
        if self.rvi != math.sqrt(self.vi):
            raise InvariantError("rvi must equal sqrt(vi) exactly")
        if self.mi > min(self.h_ref, self.h_model) + MI_BOUND_ATOL:
            raise InvariantError(
                f"mi = {self.mi} exceeds min marginal entropy {min(self.h_ref, self.h_model)}"
            )
        if not (0.0 <= self.smi <= 1.0 and 0.0 <= self.nmi <= 1.0):
            raise InvariantError("smi and nmi must lie in [0, 1]")
        hh = self.h_ref * self.h_model
        if hh > 0.0:
            smi_law = self.h_ref**2 + self.h_model**2 - 2.0 * hh * (2.0 * self.smi - 1.0)
            if identity_residual(self.vi**2, smi_law) > IDENTITY_RTOL:
                raise InvariantError("vi^2 does not satisfy the smi cosine law")
            nmi_law = self.h_ref + self.h_model - 2.0 * math.sqrt(hh) * self.nmi
            if identity_residual(self.vi, nmi_law) > IDENTITY_RTOL:
                raise InvariantError("vi does not satisfy the nmi cosine law")

    @classmethod
    def from_entropies(cls, h_ref: float, h_model: float, mi: float) -> "InfoMetrics":
        """Build a consistent record from marginal entropies and mutual information.

        Clamps mi into [0, min(h_ref, h_model)] to absorb floating-point
        overshoot; this keeps vi >= 0 in floating point as well.
        """
        mi = min(max(mi, 0.0), min(h_ref, h_model))
        vi = h_ref + h_model - 2.0 * mi
        hh = h_ref * h_model
        degenerate = hh <= 0.0
        if degenerate:
            smi = 0.0
            nmi = 0.0
        else:
            smi = min(1.0, max(0.0, mi * (h_ref + h_model - mi) / hh))
            nmi = min(1.0, max(0.0, mi / math.sqrt(hh)))
        return cls(
            h_ref=h_ref,
            h_model=h_model,
            mi=mi,
            smi=smi,
            nmi=nmi,
            vi=vi,
            rvi=math.sqrt(vi),
            degenerate=degenerate,
        )


#: Either flavor of per-model summary measures.
MetricTriple = TaylorMetrics | InfoMetrics


@dataclass(frozen=True)
class BinningConfig:
    """Histogram configuration for the entropy estimator."""

    bin_count: int | str = AUTO
    log_base: float = 2.0

    def __post_init__(self):
        if self.bin_count != AUTO:
            if not isinstance(self.bin_count, int) or self.bin_count < 1:
                raise InvariantError(f"bin_count must be a positive integer or {AUTO!r}")
        if not self.log_base > 1.0:
            raise InvariantError("log_base must be > 1")

    def resolve(self, n: int) -> int:
        if n < 1:
            raise EmptyInputError("cannot resolve bin count for empty input")
        if self.bin_count == AUTO:
            return math.isqrt(n - 1) + 1  # ceil(sqrt(n)) without float round-off
        return int(self.bin_count)


def _require_equal_lengths(reference: SampleVector, model: SampleVector) -> None:
    if len(reference) != len(model):
        raise LengthMismatchError(
            f"{reference.name!r} has {len(reference)} values but {model.name!r} has {len(model)}"
        )


def taylor_metrics(reference: SampleVector, model: SampleVector) -> TaylorMetrics:
    """Population standard deviations, Pearson correlation, and centered RMSE."""
    _require_equal_lengths(reference, model)
    n = len(reference)
    x = reference.values
    y = model.values
    mean_x = math.fsum(x) / n
    mean_y = math.fsum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    sigma_ref = math.sqrt(math.fsum(d * d for d in dx) / n)
    sigma_model = math.sqrt(math.fsum(d * d for d in dy) / n)
    if sigma_ref == 0.0 or sigma_model == 0.0:
        raise ZeroVarianceError(
            f"constant series ({reference.name!r} or {model.name!r}): correlation undefined"
        )
    cov = math.fsum(a * b for a, b in zip(dx, dy)) / n
    correlation = min(1.0, max(-1.0, cov / (sigma_ref * sigma_model)))
    crmse = math.sqrt(math.fsum((a - b) ** 2 for a, b in zip(dx, dy)) / n)
    return TaylorMetrics(
        sigma_ref=sigma_ref,
        sigma_model=sigma_model,
        correlation=correlation,
        crmse=crmse,
    )


def _entropy_from_counts(counts: np.ndarray, n: int, log_base: float) -> float:
    probs = [c / n for c in counts.ravel().tolist() if c > 0]
    if log_base == 2.0:
        return -math.fsum(p * math.log2(p) for p in probs)
    scale = math.log(log_base)
    return -math.fsum(p * math.log(p) / scale for p in probs)


def info_metrics(
    reference: SampleVector, model: SampleVector, cfg: BinningConfig | None = None
) -> InfoMetrics:
    """Entropy, mutual information, and the derived similarity/distance measures.

    A joint 2-D equal-width histogram spans [min, max] of each variable; both
    marginals are taken from the joint so that mi <= min(h_ref, h_model) holds
    by construction. With either marginal entropy zero the pair is degenerate
    and smi = nmi = 0.
    """
    _require_equal_lengths(reference, model)
    cfg = cfg or BinningConfig()
    n = len(reference)
    if n == 0:
        raise EmptyInputError("cannot estimate entropy of an empty series")
    bins = cfg.resolve(n)
    joint, _, _ = np.histogram2d(reference.as_array(), model.as_array(), bins=bins)
    h_ref = _entropy_from_counts(joint.sum(axis=1), n, cfg.log_base)
    h_model = _entropy_from_counts(joint.sum(axis=0), n, cfg.log_base)
    h_joint = _entropy_from_counts(joint, n, cfg.log_base)
    mi = h_ref + h_model - h_joint
    return InfoMetrics.from_entropies(h_ref, h_model, mi)


def polar_from_cartesian(x: float, y: float) -> tuple[float, float]:
    """Map (x, y) to (r, theta) with theta in (-pi, pi]; the origin maps to (0, 0)."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvariantError("polar conversion requires finite coordinates")
    r = math.hypot(x, y)
    theta = math.atan2(y, x)
    if theta <= -math.pi:  # atan2 yields -pi for (-x, -0.0)
        theta = math.pi
    return r, theta


def cartesian_from_polar(r: float, theta: float) -> tuple[float, float]:
    """Map (r, theta) to (x, y); r must be non-negative."""
    if r < 0:
        raise NegativeRadiusError(f"radius must be non-negative, got {r}")
    return r * math.cos(theta), r * math.sin(theta)
