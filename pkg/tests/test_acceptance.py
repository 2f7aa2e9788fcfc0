"""Acceptance gate: one test per exit criterion, each at its stated
tolerance and runtime budget, printing one PASS/FAIL line per criterion
(run with `pytest -s` to see the lines as they happen).
"""

import functools
import io
import json
import math
import time
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from entrokit import (
    DensitySpec,
    DiscretizedShellDensity,
    LogAffineFit,
    PhiPrimeSamples,
    ShellSpec,
    boltzmann_entropy,
    cli,
    compare_entropy_forms,
    classical_entropy_comparison,
    convergence_sweep,
    difference_equation_defect,
    differential_entropy,
    fit_log_affine,
    maxent_shell_check,
    modified_differential_entropy,
    quantize_density,
    robin_hood_pair,
    run_axiom_suite,
    schur_concavity_check,
    shannon_entropy,
    total_entropy_from_density,
)

SEED = 20260810

FAMILIES = [
    DensitySpec.uniform(0.0, 1.0),
    DensitySpec.uniform(0.0, 2.0),
    DensitySpec.gaussian(0.0, 1.0),
    DensitySpec.exponential(1.0),
]


def criterion(num, budget_s, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {num:2d}: FAIL  {description}")
                raise
            elapsed = time.perf_counter() - start
            print(
                f"criterion {num:2d}: PASS  {description}  "
                f"[{elapsed:.2f}s / {budget_s:.0f}s]"
            )
            assert elapsed < budget_s, f"runtime {elapsed:.2f}s over {budget_s}s budget"

        return wrapper

    return decorate


@criterion(1, 5.0, "axiom suite over 10,000 seeded distributions")
def test_criterion_1_axiom_suite():
    report = run_axiom_suite(
        seed=SEED,
        n_distributions=10_000,
        max_n=64,
        additivity_pairs=1_000,
        majorization_pairs=0,
    )
    assert report.n_distributions == 10_000
    assert report.min_entropy >= 0.0
    assert report.max_uniform_bound_excess <= 1e-12
    assert report.uniform_equality_gap <= 1e-12
    assert report.equality_only_at_uniform
    assert report.additivity_max_defect <= 1e-10
    assert report.concavity_min_slack >= -1e-10


@criterion(2, 1.0, "Schur concavity over 1,000 majorization pairs")
def test_criterion_2_schur_concavity():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(1_000):
        n = int(rng.integers(2, 65))
        p, q = robin_hood_pair(rng, n, transfers=int(rng.integers(1, 6)))
        report = schur_concavity_check(p, q)
        assert report.majorizes
        assert report.entropy_ordered


@criterion(3, 1.0, "log-affine recovery and difference-equation defects")
def test_criterion_3_functional_equation():
    samples = PhiPrimeSamples.from_function(lambda p: -2.0 * math.log(p) + 3.0)
    fit = fit_log_affine(samples)
    assert fit.A == pytest.approx(-2.0, abs=1e-10)
    assert fit.B == pytest.approx(3.0, abs=1e-10)
    assert fit.residual <= 1e-10
    assert fit.admissible

    assert difference_equation_defect(lambda p: -2.0 * math.log(p) + 3.0) <= 1e-10
    assert difference_equation_defect(lambda p: p * p) > 0.1


@criterion(4, 1.0, "total-entropy shift identity at 1e-12")
def test_criterion_4_shift_identity():
    for f in FAMILIES:
        for h in (0.5, 0.25, 0.1):
            quantized = quantize_density(f, h).binned.dist
            total = total_entropy_from_density(f, h).value
            shifted = shannon_entropy(quantized).value + math.log(h)
            assert total == pytest.approx(shifted, abs=1e-12), (f.family, h)


@criterion(5, 10.0, "quantized entropy converges to the differential limit")
def test_criterion_5_convergence():
    f = DensitySpec.gaussian(0.0, 1.0)
    h_values = [0.5 * 2.0**-j for j in range(8)]
    rows = convergence_sweep(f, h_values)
    errs = [r.abs_error for r in rows]
    assert all(b < a for a, b in zip(errs, errs[1:])), errs
    at_128 = errs[h_values.index(1.0 / 128.0)]
    assert at_128 < 1e-3
    assert rows[0].differential_entropy == pytest.approx(
        0.5 * math.log(2.0 * math.pi * math.e), abs=1e-8
    )


@criterion(6, 2.0, "closed-form differential entropies within 1e-8")
def test_criterion_6_closed_forms():
    for a in (0.5, 1.0, 2.0, 4.0):
        h = differential_entropy(DensitySpec.uniform(0.0, a)).value
        assert h == pytest.approx(math.log(a), abs=1e-8)
    assert differential_entropy(DensitySpec.exponential(1.0)).value == pytest.approx(
        1.0, abs=1e-8
    )


@criterion(7, 2.0, "modified-entropy width identity within 1e-8")
def test_criterion_7_modified_identity():
    for f in FAMILIES:
        hc = differential_entropy(f).value
        for h in (0.1, 0.5, 1.0, 2.0):
            gap = modified_differential_entropy(f, h).value - hc
            assert gap == pytest.approx(-math.log(h), abs=1e-8), (f.family, h)


@criterion(8, 1.0, "Sackur-Tetrode cross-check with shrinking remainder")
def test_criterion_8_sackur_tetrode():
    # independent oracle, written out rather than imported
    def sackur_tetrode(E, V, N):
        return N * (math.log(V / N) + 1.5 * math.log(4.0 * math.pi * E / (3.0 * N)) + 2.5)

    rels = {}
    for n in (100, 1_000):
        e, v = 1.5 * n, 1e6 * n
        spec = ShellSpec(E=e, dE=0.01 * e, V=v, N=n, indistinguishable=True)
        s = boltzmann_entropy(spec).value
        rels[n] = abs(s - sackur_tetrode(e, v, n)) / sackur_tetrode(e, v, n)
    assert rels[100] <= 0.005
    assert rels[1_000] <= 0.0005
    assert rels[1_000] < rels[100]  # Stirling remainder shrinking


@criterion(9, 2.0, "uniform shell density maximizes the entropy functional")
def test_criterion_9_maxent_uniformity():
    for m in (4, 16, 64):
        d = DiscretizedShellDensity.uniform(np.full(m, 1.0))
        report = maxent_shell_check(d, C=1.0, trials=1_000, seed=SEED + m)
        assert report.is_maximal, m


@criterion(10, 1.0, "the two classical-entropy readings disagree as claimed")
def test_criterion_10_entropy_forms():
    spec = ShellSpec(E=150.0, dE=1.5, V=1000.0, N=100, planck_h=1.0)
    unit_cell = classical_entropy_comparison(spec)
    assert unit_cell.gap == 0.0
    assert unit_cell.s_cell_in_log == unit_cell.s_prefactor

    report = compare_entropy_forms(ln_omega=8.0, planck_h=2.0, N=1)
    assert report.gap == pytest.approx(8.0 - 3.0 * math.log(2.0) - 1.0, abs=1e-10)


def _invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue()


@criterion(11, 5.0, "CLI determinism and the full exit-code matrix")
def test_criterion_11_cli_contract(monkeypatch):
    gaussian = '{"family":"gaussian","mu":0,"sigma":1}'
    commands = [
        ["discrete", "--probs", "[0.5,0.5]", "--unit", "bits"],
        ["total", "--data", '{"values":[0,1],"probs":[0.5,0.5],"widths":[2,2]}'],
        ["differential", "--density", gaussian],
        ["modified", "--density", gaussian, "--h", "0.5"],
        ["quantize", "--density", gaussian, "--h", "0.5"],
        ["converge", "--density", gaussian, "--h-start", "0.5", "--halvings", "3",
         "--format", "csv"],
        ["axioms", "--seed", str(SEED), "--n-dists", "400",
         "--additivity-pairs", "50", "--majorization-pairs", "50"],
        ["fit-phi", "--data", "0.1,2.0\n0.2,1.3\n0.5,0.4\n0.9,-0.2"],
        ["statmech", "ideal-gas", "--E", "150", "--dE", "1.5", "--V", "1000",
         "--N", "100", "--indistinguishable"],
        ["statmech", "compare", "--E", "150", "--dE", "1.5", "--V", "1000",
         "--N", "100", "--planck-h", "2"],
    ]
    for argv in commands:
        code1, out1 = _invoke(argv)
        code2, out2 = _invoke(argv)
        assert code1 == code2 == 0, argv
        assert out1 == out2, argv

    exit_codes = {0: _invoke(["discrete", "--probs", "[1.0]"])[0]}
    exit_codes[2] = _invoke(["discrete", "--probs", "[1.0]", "--no-such-flag"])[0]
    exit_codes[65] = _invoke(["discrete", "--probs", "[0.6,0.5]"])[0]
    exit_codes[66] = _invoke(["discrete", "--input", "/no/such/file.json"])[0]

    def boom(spec):
        raise RuntimeError("injected fault")

    monkeypatch.setitem(cli._HANDLERS, "discrete", boom)
    exit_codes[70] = _invoke(["discrete", "--probs", "[1.0]"])[0]
    monkeypatch.undo()

    for expected, actual in exit_codes.items():
        assert actual == expected, f"exit code {actual} where {expected} expected"

    code, out = _invoke(["discrete", "--probs", "[0.6,0.5]"])
    assert json.loads(out)["error"]["kind"] == "NotNormalized"
