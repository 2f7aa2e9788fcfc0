"""Classical microcanonical entropy for the ideal monatomic gas.

The phase-space volume below energy E for N free particles of mass m in a
box of volume V is the 3N-ball formula

    ln Phi(E) = N ln V + (3N/2) ln(2 pi m E) - ln Gamma(3N/2 + 1)

and the energy-shell volume Omega(E, dE) = Phi(E + dE) - Phi(E) is formed
as a log-domain difference, so particle counts far beyond 10^3 stay exact:
the (3N/2)-power factors overflow any fixed-precision float long before the
logs do.  Entropy follows as S = k ln(Omega / C^N) with the phase-cell
constant C^N = h^3N for distinguishable particles and N! h^3N for
indistinguishable ones.

Natural units (m = h = k = 1) are the default; nothing below ever leaves
the log domain except where explicitly mitigated.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .distributions import DensitySpec, EntropyValue
from .errors import InvalidDensity, ValidationError
from .quantize import _check_k, _entropy_integral

MAXENT_SLACK = 1e-12


def modified_differential_entropy(f: DensitySpec, h: float, k: float = 1.0) -> EntropyValue:
    """-k * integral of f ln(h f): the quantity the quantized Shannon
    entropy actually approaches as the bin width h shrinks.

    Integrated directly; the exact identity against the plain differential
    entropy (difference is -k ln h) is left to the tests."""
    _check_k(k)
    if h <= 0 or not math.isfinite(h):
        raise ValidationError(f"h must be a positive real, got {h}")
    value = _entropy_integral(f, lambda d: -d * math.log(h * d))
    return EntropyValue.from_k(k * value, k)


@dataclass(frozen=True)
class ShellSpec:
    """Microcanonical parameters: energy E, shell thickness dE, box volume V,
    particle count N, particle mass m, phase-cell constant planck_h."""

    E: float
    dE: float
    V: float
    N: int
    m: float = 1.0
    planck_h: float = 1.0
    indistinguishable: bool = True

    def __post_init__(self) -> None:
        for name in ("E", "dE", "V", "m", "planck_h"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be a positive finite real, got {v}")
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise ValidationError(f"N must be an integer >= 1, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        if self.dE / self.E > 0.1:
            warnings.warn(
                f"shell thickness dE/E = {self.dE / self.E:.3f} is not small; "
                "shell-volume results lose their thin-shell meaning",
                RuntimeWarning,
                stacklevel=2,
            )


def log_phase_ball_volume(spec: ShellSpec, energy: float | None = None) -> float:
    """ln Phi(E): log phase-space volume below the given energy."""
    e = spec.E if energy is None else energy
    if e <= 0:
        raise ValidationError(f"energy must be > 0, got {e}")
    n = spec.N
    return (
        n * math.log(spec.V)
        + 1.5 * n * math.log(2.0 * math.pi * spec.m * e)
        - float(gammaln(1.5 * n + 1.0))
    )


def log_phase_shell_volume(spec: ShellSpec) -> float:
    """ln Omega = ln[Phi(E + dE) - Phi(E)], entirely in the log domain.

    Computed as ln Phi(E) + ln(expm1(delta)) with
    delta = (3N/2) ln(1 + dE/E); when delta underflows the difference, the
    derivative form ln[Phi'(E) dE] takes over.
    """
    ln_phi = log_phase_ball_volume(spec)
    delta = 1.5 * spec.N * math.log1p(spec.dE / spec.E)
    if delta < 1e-12:
        return ln_phi + math.log(1.5 * spec.N / spec.E) + math.log(spec.dE)
    if delta > 700.0:  # expm1 would overflow; the shell is the whole ball
        return ln_phi + delta + math.log1p(-math.exp(-delta))
    return ln_phi + math.log(math.expm1(delta))


def boltzmann_entropy(spec: ShellSpec, k: float = 1.0) -> EntropyValue:
    """S = k ln(Omega / C^N), with ln N! via lnGamma(N + 1)."""
    _check_k(k)
    s = log_phase_shell_volume(spec) - 3.0 * spec.N * math.log(spec.planck_h)
    if spec.indistinguishable:
        s -= float(gammaln(spec.N + 1.0))
    return EntropyValue.from_k(k * s, k)


def sackur_tetrode_entropy(spec: ShellSpec, k: float = 1.0) -> EntropyValue:
    """Sackur-Tetrode closed form for the indistinguishable ideal gas,

        S/(N k) = ln[(V/N) (4 pi m E / (3 N h^2))^(3/2)] + 5/2,

    i.e. the Stirling-approximated large-N limit of boltzmann_entropy.
    Serves as the independent cross-check the CLI reports alongside the
    shell-volume path."""
    _check_k(k)
    n = spec.N
    arg = (spec.V / n) * (
        4.0 * math.pi * spec.m * spec.E / (3.0 * n * spec.planck_h**2)
    ) ** 1.5
    return EntropyValue.from_k(k * n * (math.log(arg) + 2.5), k)


# -- maximum-entropy check on the discretized shell ----------------------------


@dataclass(frozen=True)
class DiscretizedShellDensity:
    """Phase-space density represented by cell volumes w_i and per-cell
    density values f_i, normalized so sum(w_i f_i) = 1.  The 6N coordinates
    never appear; cells are the only geometry retained."""

    cell_volumes: np.ndarray
    densities: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.cell_volumes, dtype=float, copy=True)
        f = np.array(self.densities, dtype=float, copy=True)
        if w.ndim != 1 or w.size == 0 or w.shape != f.shape:
            raise ValidationError("cell_volumes and densities must be equal-length 1-D")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise ValidationError("cell volumes must be positive and finite")
        if np.any(~np.isfinite(f)) or np.any(f < 0):
            raise InvalidDensity("densities must be nonnegative and finite")
        total = math.fsum((w * f).tolist())
        if abs(total - 1.0) > 1e-9:
            raise InvalidDensity(f"sum(w_i f_i) = {total}, off by {total - 1.0:+.3e}")
        w.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "cell_volumes", w)
        object.__setattr__(self, "densities", f)

    @classmethod
    def uniform(cls, cell_volumes) -> "DiscretizedShellDensity":
        w = np.asarray(cell_volumes, dtype=float)
        total = math.fsum(w.tolist())
        return cls(w, np.full(w.size, 1.0 / total))


def shell_entropy(d: DiscretizedShellDensity, C: float, k: float = 1.0) -> float:
    """Discretized S = -k sum(w_i f_i ln(C f_i)); empty cells contribute 0."""
    _check_k(k)
    if not (C > 0 and math.isfinite(C)):
        raise ValidationError(f"C must be a positive finite real, got {C}")
    w = d.cell_volumes
    f = d.densities
    mask = f > 0
    terms = (-w[mask] * f[mask] * np.log(C * f[mask])).tolist()
    return k * math.fsum(terms)


@dataclass(frozen=True)
class MaxentReport:
    entropy: float
    is_maximal: bool


def maxent_shell_check(
    d: DiscretizedShellDensity,
    C: float,
    k: float = 1.0,
    trials: int = 1000,
    seed: int = 0,
) -> MaxentReport:
    """Entropy of d, plus a perturbative check that the uniform density on
    the same cells is the entropy maximizer.

    The optimum is known in closed form (constant density), so the burden
    here is falsification: `trials` random normalization- and
    nonnegativity-preserving perturbations of the uniform density, none of
    which may exceed its entropy by more than 1e-12.
    """
    entropy = shell_entropy(d, C, k)
    uniform = DiscretizedShellDensity.uniform(d.cell_volumes)
    s_uniform = shell_entropy(uniform, C, k)
    rng = np.random.default_rng(seed)
    w = d.cell_volumes
    is_maximal = True
    for _ in range(trials):
        raw = rng.exponential(size=w.size)
        candidate = raw / math.fsum((w * raw).tolist())
        t = 1.0 - rng.random()  # in (0, 1]: never the uniform point itself
        mixed = (1.0 - t) * uniform.densities + t * candidate
        s = shell_entropy(DiscretizedShellDensity(w, mixed), C, k)
        if s > s_uniform + MAXENT_SLACK:
            is_maximal = False
            break
    return MaxentReport(entropy=entropy, is_maximal=is_maximal)


# -- two classical-entropy readings compared -----------------------------------


@dataclass(frozen=True)
class EntropyFormComparison:
    """Both classical-entropy expressions at the uniform shell density.

    s_cell_in_log places the phase-cell constant inside the logarithm,
    S = k ln(Omega / h^3N), matching Boltzmann entropy.  s_prefactor divides
    the density by the cell volume outside the logarithm instead, giving
    S = k ln(Omega) / h^3N, which is not Boltzmann's form and differs by
    more than any additive constant.  When h^3N is not representable the
    prefactor value is carried as a log-magnitude with sign.
    """

    s_cell_in_log: float
    s_prefactor: float
    gap: float
    prefactor_log_magnitude: float
    prefactor_sign: int
    overflowed: bool

    def to_json_obj(self) -> dict:
        obj = {
            "S_cell_in_log": self.s_cell_in_log,
            "S_prefactor": self.s_prefactor,
            "gap": self.gap,
        }
        if self.overflowed:
            obj["S_prefactor_log_magnitude"] = self.prefactor_log_magnitude
            obj["S_prefactor_sign"] = self.prefactor_sign
        return obj


def compare_entropy_forms(
    ln_omega: float, planck_h: float, N: int, k: float = 1.0
) -> EntropyFormComparison:
    """Evaluate both expressions from a known log shell volume."""
    _check_k(k)
    if not (planck_h > 0 and math.isfinite(planck_h)):
        raise ValidationError(f"planck_h must be a positive finite real, got {planck_h}")
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    log_cell = 3.0 * N * math.log(planck_h)
    s_in_log = k * (ln_omega - log_cell)

    sign = int(math.copysign(1.0, ln_omega)) if ln_omega != 0.0 else 0
    if ln_omega == 0.0:
        log_mag = -math.inf
    else:
        log_mag = math.log(k * abs(ln_omega)) - log_cell
    if log_mag > 700.0:
        s_prefactor = sign * math.inf
        overflowed = True
    elif log_mag < -700.0 and ln_omega != 0.0:
        s_prefactor = sign * 0.0
        overflowed = True
    else:
        s_prefactor = k * ln_omega / planck_h ** (3 * N)
        overflowed = False
    return EntropyFormComparison(
        s_cell_in_log=s_in_log,
        s_prefactor=s_prefactor,
        gap=s_in_log - s_prefactor,
        prefactor_log_magnitude=log_mag,
        prefactor_sign=sign,
        overflowed=overflowed,
    )


def classical_entropy_comparison(spec: ShellSpec, k: float = 1.0) -> EntropyFormComparison:
    """Both entropy readings for the ideal-gas shell, assuming the uniform
    equilibrium density 1/Omega on the shell."""
    return compare_entropy_forms(log_phase_shell_volume(spec), spec.planck_h, spec.N, k)
