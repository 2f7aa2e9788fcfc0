import math

import numpy as np
import pytest

from entrokit import (
    DensitySpec,
    NonPositiveWidth,
    QuadratureFailure,
    UnboundedSupport,
    ValidationError,
    convergence_sweep,
    differential_entropy,
    quantize_density,
    shannon_entropy,
    total_entropy_from_density,
)


class OscillatoryDensity(DensitySpec):
    """Gaussian modulated far beyond what adaptive subdivision can resolve."""

    def pdf(self, x):
        base = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
        return base * (1.0 + 0.999 * math.sin(4e7 * x * x))

GAUSS_HC = 0.5 * math.log(2.0 * math.pi * math.e)


def normal_cdf(x):
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


class TestQuantizeDensity:
    def test_flat_density_exact_bins(self):
        r = quantize_density(DensitySpec.uniform(0.0, 1.0), 0.1)
        assert r.binned.probs.size == 10
        np.testing.assert_allclose(r.binned.probs, 0.1, atol=1e-12)
        assert r.mass_deficit == pytest.approx(0.0, abs=1e-12)

    def test_flat_density_coarser(self):
        r = quantize_density(DensitySpec.uniform(0.0, 2.0), 0.5)
        assert r.binned.probs.size == 4
        np.testing.assert_allclose(r.binned.probs, 0.25, atol=1e-12)
        np.testing.assert_allclose(r.binned.values, [0.25, 0.75, 1.25, 1.75], atol=1e-12)

    def test_gaussian_central_bin_midpoint_anchored(self):
        # the grid centers on the support midpoint, so the mode sits at a
        # bin midpoint and the central bin is [-h/2, h/2]
        r = quantize_density(DensitySpec.gaussian(0.0, 1.0), 0.5)
        i = int(np.abs(r.binned.values).argmin())
        assert r.binned.values[i] == pytest.approx(0.0, abs=1e-12)
        oracle = normal_cdf(0.25) - normal_cdf(-0.25)
        assert r.binned.probs[i] == pytest.approx(oracle, abs=1e-10)

    def test_all_widths_equal_h(self):
        r = quantize_density(DensitySpec.exponential(1.0), 0.3)
        assert np.all(r.binned.widths == 0.3)

    @pytest.mark.parametrize(
        "f",
        [
            DensitySpec.uniform(0.0, 1.0),
            DensitySpec.uniform(-1.0, 3.0),
            DensitySpec.gaussian(0.0, 1.0),
            DensitySpec.gaussian(2.0, 0.5),
            DensitySpec.exponential(1.0),
            DensitySpec.exponential(0.25),
        ],
    )
    @pytest.mark.parametrize("h", [0.5, 0.25, 0.1])
    def test_mass_conservation_against_cdf(self, f, h):
        # deficit comes from the closed-form CDF, masses from quadrature:
        # agreement is a genuine cross-check of the integration
        r = quantize_density(f, h)
        total = math.fsum(r.binned.probs.tolist()) + r.mass_deficit
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_bin_masses_match_cdf_increments(self):
        f = DensitySpec.gaussian(0.5, 2.0)
        r = quantize_density(f, 0.25)
        left = r.binned.values - r.h / 2.0
        for x, p in zip(left[::7], r.binned.probs[::7]):
            assert p == pytest.approx(f.mass(x, x + r.h), abs=1e-10)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(NonPositiveWidth):
            quantize_density(DensitySpec.uniform(0.0, 1.0), 0.0)
        with pytest.raises(NonPositiveWidth):
            quantize_density(DensitySpec.uniform(0.0, 1.0), -0.5)

    def test_rejects_unbounded_support(self):
        # forged spec bypassing construction-time validation: the quantizer
        # still refuses to tile an infinite interval
        bad = object.__new__(DensitySpec)
        object.__setattr__(bad, "family", DensitySpec.gaussian(0, 1).family)
        object.__setattr__(bad, "params", {"mu": 0.0, "sigma": 1.0})
        object.__setattr__(bad, "support", (-math.inf, math.inf))
        with pytest.raises(UnboundedSupport):
            quantize_density(bad, 0.5)


class TestDifferentialEntropy:
    def test_unit_uniform_is_zero(self):
        assert differential_entropy(DensitySpec.uniform(0.0, 1.0)).value == pytest.approx(
            0.0, abs=1e-10
        )

    def test_uniform_two(self):
        assert differential_entropy(DensitySpec.uniform(0.0, 2.0)).value == pytest.approx(
            math.log(2.0), abs=1e-10
        )

    def test_standard_gaussian(self):
        assert differential_entropy(DensitySpec.gaussian(0.0, 1.0)).value == pytest.approx(
            GAUSS_HC, abs=1e-8
        )

    def test_unit_exponential(self):
        assert differential_entropy(DensitySpec.exponential(1.0)).value == pytest.approx(
            1.0, abs=1e-8
        )

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 4.0])
    def test_scale_covariance_of_uniform(self, a):
        # ln(a), negative below a = 1: differential entropy escapes the
        # nonnegativity axiom of the discrete case
        h = differential_entropy(DensitySpec.uniform(0.0, a)).value
        assert h == pytest.approx(math.log(a), abs=1e-8)
        if a < 1.0:
            assert h < 0.0

    def test_k_scaling_is_exact(self):
        f = DensitySpec.gaussian(0.0, 1.0)
        assert differential_entropy(f, 2.0).value == 2.0 * differential_entropy(f, 1.0).value

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_unreachable_tolerance_raises(self):
        with pytest.raises(QuadratureFailure):
            differential_entropy(OscillatoryDensity.gaussian(0.0, 1.0))


class TestTotalEntropyFromDensity:
    def test_flat_density_vanishes(self):
        assert total_entropy_from_density(
            DensitySpec.uniform(0.0, 1.0), 0.1
        ).value == pytest.approx(0.0, abs=1e-12)

    def test_flat_density_half_masses(self):
        assert total_entropy_from_density(
            DensitySpec.uniform(0.0, 2.0), 0.5
        ).value == pytest.approx(math.log(2.0), abs=1e-12)

    def test_gaussian_quarter_width(self):
        v = total_entropy_from_density(DensitySpec.gaussian(0.0, 1.0), 0.25).value
        assert v == pytest.approx(GAUSS_HC, abs=0.01)

    @pytest.mark.parametrize(
        "f",
        [
            DensitySpec.uniform(0.0, 1.0),
            DensitySpec.uniform(0.0, 2.0),
            DensitySpec.gaussian(0.0, 1.0),
            DensitySpec.exponential(1.0),
        ],
    )
    @pytest.mark.parametrize("h", [0.5, 0.25, 0.1])
    def test_shift_identity(self, f, h):
        # total entropy differs from the quantized Shannon entropy by
        # exactly k ln h
        quantized = quantize_density(f, h).binned.dist
        total = total_entropy_from_density(f, h).value
        assert total == pytest.approx(
            shannon_entropy(quantized).value + math.log(h), abs=1e-12
        )

    def test_k_scaling_is_exact(self):
        f = DensitySpec.exponential(1.0)
        one = total_entropy_from_density(f, 0.25, 1.0).value
        assert total_entropy_from_density(f, 0.25, 2.0).value == 2.0 * one


class TestConvergenceSweep:
    def test_gaussian_error_shrinks(self):
        rows = convergence_sweep(DensitySpec.gaussian(0.0, 1.0), [0.5, 0.25, 0.125])
        errs = [r.abs_error for r in rows]
        assert errs[0] > errs[1] > errs[2]
        assert [r.h for r in rows] == [0.5, 0.25, 0.125]

    def test_flat_density_is_exact_at_every_width(self):
        rows = convergence_sweep(DensitySpec.uniform(0.0, 1.0), [0.5, 0.1, 0.01])
        for r in rows:
            assert r.abs_error == pytest.approx(0.0, abs=1e-12)

    def test_exponential_error_shrinks_below_percent(self):
        rows = convergence_sweep(DensitySpec.exponential(1.0), [0.4, 0.2, 0.1])
        errs = [r.abs_error for r in rows]
        assert errs[0] > errs[1] > errs[2]
        assert errs[-1] < 0.01

    def test_rows_carry_consistent_error(self):
        rows = convergence_sweep(DensitySpec.gaussian(0.0, 1.0), [0.5, 0.25])
        for r in rows:
            assert r.abs_error == abs(r.total_entropy - r.differential_entropy)

    def test_h_values_must_decrease(self):
        f = DensitySpec.uniform(0.0, 1.0)
        with pytest.raises(ValidationError):
            convergence_sweep(f, [0.1, 0.5])
        with pytest.raises(NonPositiveWidth):
            convergence_sweep(f, [0.5, 0.0])
