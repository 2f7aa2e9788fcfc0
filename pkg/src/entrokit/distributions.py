"""Validated probability carriers shared by every other module.

All types are frozen dataclasses validated on construction and immutable
afterwards; operations are pure functions, so everything here is safe to
share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import (
    NegativeProbability,
    NotNormalized,
    UnboundedSupport,
    ValidationError,
)

DEFAULT_TOLERANCE = 1e-9

# Quantile mass dropped per truncated tail of an infinite support.  Small
# enough that the residual mass never disturbs 1e-12-level identities built
# on quantized distributions.
TRUNCATION_EPS = 1e-13

LN2 = math.log(2.0)
BITS_K = 1.0 / LN2


def _as_float_vector(x, name: str) -> np.ndarray:
    # always a fresh array: carriers freeze their storage, which must never
    # reach back into caller-owned buffers
    arr = np.array(x, dtype=float, copy=True)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be a 1-D sequence, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} must be finite everywhere")
    return arr


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite probability vector (p_1..p_n), validated but never repaired.

    Zero entries are legal and retained so index alignment with values and
    widths survives downstream.
    """

    probs: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        probs = _as_float_vector(self.probs, "probs")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if not (0 < self.tolerance < 1):
            raise ValidationError(f"tolerance must be in (0, 1), got {self.tolerance}")
        if np.any(probs < 0):
            worst = float(probs.min())
            raise NegativeProbability(f"negative probability entry {worst}")
        total = math.fsum(probs.tolist())
        if abs(total - 1.0) > self.tolerance:
            raise NotNormalized(
                f"probabilities sum to {total}, off by {total - 1.0:+.3e} "
                f"(tolerance {self.tolerance:.1e})"
            )

    @property
    def n(self) -> int:
        return int(self.probs.size)

    def to_json_obj(self) -> dict[str, list[float]]:
        return {"probs": [float(p) for p in self.probs]}


@dataclass(frozen=True)
class BinnedVariable:
    """Discrete variable with observation intervals: values x_i, masses p_i,
    interval widths h_i."""

    values: np.ndarray
    dist: DiscreteDistribution
    widths: np.ndarray

    def __post_init__(self) -> None:
        values = _as_float_vector(self.values, "values")
        widths = _as_float_vector(self.widths, "widths")
        n = self.dist.n
        if values.size != n or widths.size != n:
            raise ValidationError(
                f"length mismatch: {values.size} values, {n} probs, {widths.size} widths"
            )
        if np.any(widths <= 0):
            raise ValidationError("all widths must be > 0")
        if np.any(np.diff(values) <= 0):
            raise ValidationError("values must be strictly increasing")
        values.setflags(write=False)
        widths.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "widths", widths)

    @property
    def probs(self) -> np.ndarray:
        return self.dist.probs

    def to_json_obj(self) -> dict[str, list[float]]:
        return {
            "values": [float(x) for x in self.values],
            "probs": [float(p) for p in self.dist.probs],
            "widths": [float(h) for h in self.widths],
        }


class DensityFamily(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class DensitySpec:
    """Continuous density from a named parametric family with an explicit
    (possibly truncated) support interval.

    Infinite tails are cut at the TRUNCATION_EPS quantile range, so the
    retained mass is always >= 1 - 1e-9 as required of a valid spec.
    """

    family: DensityFamily
    params: dict[str, float]
    support: tuple[float, float] = field(default=(math.nan, math.nan))

    def __post_init__(self) -> None:
        family = DensityFamily(self.family)
        object.__setattr__(self, "family", family)
        params = {k: float(v) for k, v in self.params.items()}
        object.__setattr__(self, "params", params)
        lo, hi = self._validate_params(family, params)
        if math.isnan(self.support[0]):
            object.__setattr__(self, "support", (lo, hi))
        else:
            s_lo, s_hi = float(self.support[0]), float(self.support[1])
            if not (math.isfinite(s_lo) and math.isfinite(s_hi) and s_lo < s_hi):
                raise ValidationError(f"support must be a finite interval, got {self.support}")
            object.__setattr__(self, "support", (s_lo, s_hi))
        captured = self.mass(*self.support)
        if captured < 1.0 - 1e-9:
            raise UnboundedSupport(
                f"declared support holds mass {captured}, below 1 - 1e-9"
            )

    @staticmethod
    def _validate_params(family: DensityFamily, params: dict[str, float]) -> tuple[float, float]:
        eps = TRUNCATION_EPS
        if family is DensityFamily.UNIFORM:
            _require_keys(params, ("a", "b"))
            if not params["a"] < params["b"]:
                raise ValidationError("uniform requires a < b")
            return params["a"], params["b"]
        if family is DensityFamily.GAUSSIAN:
            _require_keys(params, ("mu", "sigma"))
            if params["sigma"] <= 0:
                raise ValidationError("gaussian requires sigma > 0")
            mu, sigma = params["mu"], params["sigma"]
            half = -float(ndtri(eps / 2.0)) * sigma
            return mu - half, mu + half
        _require_keys(params, ("rate",))
        if params["rate"] <= 0:
            raise ValidationError("exponential requires rate > 0")
        return 0.0, -math.log(eps / 2.0) / params["rate"]

    # -- pointwise evaluation --------------------------------------------

    def pdf(self, x: float) -> float:
        """Density at x; zero outside the family's natural support."""
        if self.family is DensityFamily.UNIFORM:
            a, b = self.params["a"], self.params["b"]
            return 1.0 / (b - a) if a <= x <= b else 0.0
        if self.family is DensityFamily.GAUSSIAN:
            mu, sigma = self.params["mu"], self.params["sigma"]
            z = (x - mu) / sigma
            return math.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))
        rate = self.params["rate"]
        return rate * math.exp(-rate * x) if x >= 0.0 else 0.0

    def cdf(self, x: float) -> float:
        if self.family is DensityFamily.UNIFORM:
            a, b = self.params["a"], self.params["b"]
            if x <= a:
                return 0.0
            if x >= b:
                return 1.0
            return (x - a) / (b - a)
        if self.family is DensityFamily.GAUSSIAN:
            mu, sigma = self.params["mu"], self.params["sigma"]
            return float(ndtr((x - mu) / sigma))
        rate = self.params["rate"]
        return -math.expm1(-rate * x) if x > 0.0 else 0.0

    def mass(self, a: float, b: float) -> float:
        """Closed-form probability mass of [a, b]."""
        return self.cdf(b) - self.cdf(a)

    def discontinuities(self) -> tuple[float, ...]:
        """Points where the density jumps (natural support edges with
        positive density); quadrature splits at these, and the quantizer
        anchors its grid at the first one."""
        if self.family is DensityFamily.UNIFORM:
            return (self.params["a"], self.params["b"])
        if self.family is DensityFamily.EXPONENTIAL:
            return (0.0,)
        return ()

    # -- constructors ------------------------------------------------------

    @classmethod
    def uniform(cls, a: float, b: float) -> "DensitySpec":
        return cls(DensityFamily.UNIFORM, {"a": a, "b": b})

    @classmethod
    def gaussian(cls, mu: float, sigma: float) -> "DensitySpec":
        return cls(DensityFamily.GAUSSIAN, {"mu": mu, "sigma": sigma})

    @classmethod
    def exponential(cls, rate: float) -> "DensitySpec":
        return cls(DensityFamily.EXPONENTIAL, {"rate": rate})

    def to_json_obj(self) -> dict[str, Any]:
        return {"family": self.family.value, **self.params}


def _require_keys(params: dict[str, float], keys: tuple[str, ...]) -> None:
    if set(params) != set(keys):
        raise ValidationError(f"expected parameters {keys}, got {tuple(params)}")


class EntropyUnit(str, Enum):
    NATS = "nats"
    BITS = "bits"
    CUSTOM = "custom"


@dataclass(frozen=True)
class EntropyValue:
    """An entropy together with the unit constant k that produced it
    (k = 1 for nats, k = 1/ln 2 for bits)."""

    value: float
    k: float
    unit: EntropyUnit

    def __post_init__(self) -> None:
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValidationError(f"k must be a positive finite real, got {self.k}")
        unit = EntropyUnit(self.unit)
        object.__setattr__(self, "unit", unit)
        if unit is EntropyUnit.NATS and abs(self.k - 1.0) > 1e-12:
            raise ValidationError(f"nats requires k = 1, got {self.k}")
        if unit is EntropyUnit.BITS and abs(self.k - BITS_K) > 1e-12:
            raise ValidationError(f"bits requires k = 1/ln 2, got {self.k}")

    @classmethod
    def from_k(cls, value: float, k: float) -> "EntropyValue":
        if k == 1.0:
            unit = EntropyUnit.NATS
        elif abs(k - BITS_K) <= 1e-12:
            unit = EntropyUnit.BITS
        else:
            unit = EntropyUnit.CUSTOM
        return cls(value=value, k=k, unit=unit)

    def to_json_obj(self) -> dict[str, Any]:
        return {"value": self.value, "unit": self.unit.value}


def unit_to_k(unit: str) -> float:
    u = EntropyUnit(unit)
    if u is EntropyUnit.NATS:
        return 1.0
    if u is EntropyUnit.BITS:
        return BITS_K
    raise ValidationError("custom unit needs an explicit k")


# -- operations ---------------------------------------------------------------


def validate_distribution(
    probs, tolerance: float = DEFAULT_TOLERANCE
) -> DiscreteDistribution:
    """Check a probability vector and wrap it; never renormalizes.

    Raises NegativeProbability or NotNormalized on bad input.  Rescaling is
    the caller's explicit decision (see `renormalize`).
    """
    return DiscreteDistribution(np.asarray(probs, dtype=float), tolerance=tolerance)


def renormalize(probs, tolerance: float = DEFAULT_TOLERANCE) -> DiscreteDistribution:
    """Explicitly rescale nonnegative weights by their sum."""
    arr = _as_float_vector(np.asarray(probs, dtype=float), "probs")
    if np.any(arr < 0):
        raise NegativeProbability(f"negative probability entry {float(arr.min())}")
    total = math.fsum(arr.tolist())
    if total <= 0:
        raise NotNormalized("cannot renormalize: total mass is zero")
    return DiscreteDistribution(arr / total, tolerance=tolerance)


def product_distribution(
    p: DiscreteDistribution, q: DiscreteDistribution
) -> DiscreteDistribution:
    """Joint distribution of two independent experiments.

    Entries are p_j * q_a in row-major order (j outer, a inner).  The
    result's tolerance is scaled by (n + m) to absorb accumulated rounding.
    """
    joint = np.outer(p.probs, q.probs).ravel()
    tol = max(p.tolerance, q.tolerance) * (p.n + q.n)
    return DiscreteDistribution(joint, tolerance=min(tol, 0.5))


# -- JSON input parsing (shared wire formats) ---------------------------------


def _load_json(text_or_obj):
    if isinstance(text_or_obj, (str, bytes)):
        try:
            return json.loads(text_or_obj)
        except json.JSONDecodeError as e:
            raise ValidationError(f"invalid JSON: {e}") from e
    return text_or_obj


def discrete_from_json(
    text_or_obj, tolerance: float = DEFAULT_TOLERANCE
) -> DiscreteDistribution:
    """Accepts {"probs": [...]} or a bare JSON array."""
    obj = _load_json(text_or_obj)
    if isinstance(obj, dict):
        if "probs" not in obj:
            raise ValidationError('distribution object must carry a "probs" key')
        obj = obj["probs"]
    if not isinstance(obj, list):
        raise ValidationError("distribution JSON must be an array or {probs: [...]}")
    return validate_distribution(obj, tolerance=tolerance)


def binned_from_json(text_or_obj, tolerance: float = DEFAULT_TOLERANCE) -> BinnedVariable:
    """Accepts {"values": [...], "probs": [...], "widths": [...]}."""
    obj = _load_json(text_or_obj)
    if not isinstance(obj, dict):
        raise ValidationError("binned variable JSON must be an object")
    missing = {"values", "probs", "widths"} - set(obj)
    if missing:
        raise ValidationError(f"binned variable JSON missing keys {sorted(missing)}")
    dist = validate_distribution(obj["probs"], tolerance=tolerance)
    return BinnedVariable(
        values=np.asarray(obj["values"], dtype=float),
        dist=dist,
        widths=np.asarray(obj["widths"], dtype=float),
    )


def density_from_json(text_or_obj) -> DensitySpec:
    """Accepts {"family": "gaussian", "mu": 0, "sigma": 1} and the analogous
    uniform(a, b) / exponential(rate) objects."""
    obj = _load_json(text_or_obj)
    if not isinstance(obj, dict) or "family" not in obj:
        raise ValidationError('density JSON must be an object with a "family" key')
    obj = dict(obj)
    family = obj.pop("family")
    try:
        fam = DensityFamily(family)
    except ValueError:
        raise ValidationError(
            f"unknown density family {family!r}; expected one of "
            f"{[f.value for f in DensityFamily]}"
        ) from None
    return DensitySpec(fam, {k: float(v) for k, v in obj.items()})
