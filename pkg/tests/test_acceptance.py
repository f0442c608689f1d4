"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test prints one `[acceptance] ... PASS/FAIL` line (run with -s to see
them all).  Criterion 9's enumeration clause is expected red: the
configured frequency pair (0.6, 0.4) has rational ratio 3/2, so the merged
point set is exactly 5-periodic and its gap counts genuinely differ from
the independent-frequency limit law (by ~0.1); the companion unit test
with an irrational ratio shows the machinery converges to the formula.
"""

import itertools
import math
import time

import numpy as np

from loggap import (
    LogBase,
    empirical_cdf,
    generate_raw,
    ks_distance,
    limit_gap_density,
    order_and_gaps,
    rescaled_limit_density,
    sequence_values,
)
from loggap import qpoch
from loggap import superposition as sp
from loggap.cli import main as cli_main
from loggap.limitdist import family_E_vector
from loggap.stats import joint_histogram

E = LogBase.transcendental(math.e)


def _report(name, ok, detail=""):
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    return ok


def _raw_gaps(base, n):
    return order_and_gaps(generate_raw(base, n), n)[1]


def test_criterion_01_fig1_reproduction():
    t0 = time.perf_counter()
    gaps = _raw_gaps(E, 10**4)
    dist = ks_distance(empirical_cdf(gaps), limit_gap_density(E))
    elapsed = time.perf_counter() - t0
    ok = dist <= 0.03 and elapsed <= 2.0
    _report("A1 fig1 b=e N=1e4", ok, f"(sup-CDF {dist:.4f}, {elapsed:.2f}s)")
    assert dist <= 0.03
    assert elapsed <= 2.0


def test_criterion_02_small_gap_limit():
    worst = 0.0
    for b in (math.e, math.pi, 1.5):
        p = limit_gap_density(LogBase.transcendental(b))
        expect = math.log(b) / (b - 1.0)
        rel = abs(p.pdf(1e-6) - expect) / expect
        worst = max(worst, rel)
    ok = worst <= 1e-4
    _report("A2 small-gap limit", ok, f"(worst rel {worst:.2e})")
    assert worst <= 1e-4


def test_criterion_03_integer_base_fig3():
    base = LogBase.integer(10)
    gaps = _raw_gaps(base, 10**4)
    zero_err = abs(gaps.zero_fraction - 0.1)
    sup = ks_distance(
        empirical_cdf(gaps),
        limit_gap_density(base),
        exclude=((-0.05, 0.05),),  # away from the s = 0 atom
    )
    ok = zero_err <= 0.02 and sup <= 0.03
    _report("A3 integer base b=10", ok, f"(zero err {zero_err:.4f}, sup {sup:.4f})")
    assert zero_err <= 0.02
    assert sup <= 0.03


def test_criterion_04_root_base_fig4():
    base = LogBase.integer_root(10, 2)
    gaps = _raw_gaps(base, 10**4)
    zero_err = abs(gaps.zero_fraction - 0.1)
    sup = ks_distance(empirical_cdf(gaps), limit_gap_density(base))
    ok = zero_err <= 0.02 and sup <= 0.03
    _report("A4 root base b=sqrt(10)", ok, f"(zero err {zero_err:.4f}, sup {sup:.4f})")
    assert zero_err <= 0.02
    assert sup <= 0.03


def test_criterion_05_near_exponential_figs_2_and_5():
    for base, name in (
        (LogBase.transcendental(math.exp(0.2)), "e^(1/5)"),
        (LogBase.integer_root(10, 10), "10^(1/10)"),
    ):
        gaps = _raw_gaps(base, 10**4)
        p = limit_gap_density(base)
        sup = ks_distance(empirical_cdf(gaps), p)
        grid = np.linspace(0.0, p.support_max + 1.0, 400)
        to_exp = max(
            abs(p.cdf(float(s)) - (1.0 - math.exp(-float(s)))) for s in grid
        )
        ok = sup <= 0.03 and to_exp > 0.0
        _report(
            f"A5 near-exponential {name}",
            ok,
            f"(sup {sup:.4f}, theory-vs-exp {to_exp:.4f})",
        )
        assert sup <= 0.03
        assert to_exp > 0.0


def test_criterion_06_normalization_and_mean():
    bases = [
        E,
        LogBase.integer(10),
        LogBase.integer_root(10, 2),
        LogBase.transcendental(math.exp(0.2)),
    ]
    worst_mass = worst_mean = 0.0
    for base in bases:
        for dist in (limit_gap_density(base), rescaled_limit_density(base)):
            worst_mass = max(worst_mass, abs(dist.mass_quadrature() - 1.0))
            worst_mean = max(worst_mean, abs(dist.mean() - 1.0))
    ok = worst_mass <= 1e-8 and worst_mean <= 1e-6
    _report(
        "A6 normalization & mean",
        ok,
        f"(mass err {worst_mass:.2e}, mean err {worst_mean:.2e})",
    )
    assert worst_mass <= 1e-8
    assert worst_mean <= 1e-6


def test_criterion_07_derivative_oracles():
    worst1 = worst2 = 0.0
    for a in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
        for q in (0.1, 0.3, 0.5, 0.7, 0.9):
            h1 = 1e-6
            fd1 = (qpoch.qpoch_inf(a + h1, q) - qpoch.qpoch_inf(a - h1, q)) / (2 * h1)
            worst1 = max(worst1, abs(qpoch.dqpoch_inf(a, q) - fd1) / abs(fd1))
            h2 = 1e-4
            fd2 = (
                qpoch.qpoch_inf(a + h2, q)
                - 2.0 * qpoch.qpoch_inf(a, q)
                + qpoch.qpoch_inf(a - h2, q)
            ) / (h2 * h2)
            worst2 = max(worst2, abs(qpoch.d2qpoch_inf(a, q) - fd2) / abs(fd2))
    ok = worst1 <= 1e-6 and worst2 <= 1e-4
    _report(
        "A7 derivative oracles", ok, f"(d1 rel {worst1:.2e}, d2 rel {worst2:.2e})"
    )
    assert worst1 <= 1e-6
    assert worst2 <= 1e-4


def test_criterion_08_mc_vs_formula():
    t0 = time.perf_counter()
    omegas = (1.0, math.sqrt(2.0), math.sqrt(3.0))
    rng = np.random.default_rng(12345)
    beta_sets = [(0.0, 0.0, 0.0)] + [
        tuple(float(x) for x in rng.uniform(0.0, 10.0, 3)) for _ in range(5)
    ]
    worst_z = 0.0
    for betas in beta_sets:
        model = sp.CountingModel.of(omegas, betas)
        for L in (0.3, 0.5, 0.9):
            for k in (0, 1, 2, 3):
                est, _ = sp.mc_estimate_E(
                    model, k, L, (0.0, 1.0), 1e4, 100_000, seed=7
                )
                formula = sp.E_conv(k, L, omegas)
                se = math.sqrt(formula * (1.0 - formula) / 100_000)
                if se == 0.0:
                    # deterministic cell (a window this long always holds
                    # a point): the estimate must match exactly
                    assert est == formula, (k, L, betas, est, formula)
                else:
                    worst_z = max(worst_z, abs(est - formula) / se)
    elapsed = time.perf_counter() - t0
    ok = worst_z <= 3.0 and elapsed <= 10.0
    _report("A8 MC vs formula", ok, f"(worst |z| {worst_z:.2f}, {elapsed:.1f}s)")
    assert worst_z <= 3.0
    assert elapsed <= 10.0


def test_criterion_09a_enumeration_ccdf():
    # Expected red: 0.6/0.4 = 3/2 is rational, so the merged progressions
    # are exactly 5-periodic with per-period gap multiset
    # {0, 5/6, 5/6, 5/3, 5/3}, and no window length changes the counts.
    omegas = (0.6, 0.4)
    gaps = sp.enumerate_gaps(sp.CountingModel.of(omegas), (0.0, 100_000.0))
    theory = sp.gap_density_omega(omegas)
    worst = 0.0
    details = []
    for s in (0.25, 0.5, 1.0, 1.5):
        emp = float(np.count_nonzero(gaps > s)) / 100_000.0 / theory.total_mass
        th = theory.ccdf(s) / theory.total_mass
        worst = max(worst, abs(emp - th))
        details.append(f"s={s}: |{emp:.3f}-{th:.3f}|")
    ok = worst <= 0.01
    _report("A9a enumeration CCDF (0.6, 0.4)", ok, f"(worst {worst:.3f})")
    assert worst <= 0.01, (
        "rationally dependent frequencies (ratio 3/2): "
        "the enumerated gap law is 5-periodic and differs from the "
        f"independent-frequency formula; {'; '.join(details)}"
    )


def test_criterion_09b_second_difference_of_E():
    omegas = (0.6, 0.4)
    theory = sp.gap_density_omega(omegas)
    h = 1e-4
    worst = 0.0
    for s in np.linspace(0.1, 1.0 / 0.6 - 0.05, 15):
        s = float(s)
        fd = (
            sp.E_conv(0, s + h, omegas)
            - 2.0 * sp.E_conv(0, s, omegas)
            + sp.E_conv(0, s - h, omegas)
        ) / (h * h)
        worst = max(worst, abs(fd - theory.pdf(s)))
    ok = worst <= 1e-6
    _report("A9b d2E(0,s)/ds2 vs gap density", ok, f"(worst {worst:.2e})")
    assert worst <= 1e-6


def test_criterion_10_poisson_limit():
    worst = 0.0
    for L in (0.5, 1.0, 2.0, 3.0):
        vec = family_E_vector(1.001, 5, L)
        for k in range(6):
            poisson = L**k / math.factorial(k) * math.exp(-L)
            worst = max(worst, abs(float(vec[k]) - poisson))
    ok = worst <= 0.01
    _report("A10 Poisson limit b=1.001", ok, f"(worst {worst:.5f})")
    assert worst <= 0.01


def test_criterion_11_large_base_scaling():
    p = limit_gap_density(LogBase.transcendental(1e6))
    lnb = math.log(1e6)
    errs = [abs(p.pdf(0.5 / lnb) / lnb - 0.0)]
    for s in (1.5, 2.0, 4.0):
        errs.append(abs(p.pdf(s / lnb) / lnb - s**-2))
    worst = max(errs)
    ok = worst <= 1e-3
    _report("A11 b->inf scaling b=1e6", ok, f"(worst {worst:.2e})")
    assert worst <= 1e-3


def test_criterion_12_x_independence_unfolded():
    n = 10**5
    unfolded = sequence_values(E, n, "unfolded")
    _, gaps = order_and_gaps(unfolded, n, provenance="unfolded")
    smax = 1.0 / (1.0 - 1.0 / math.e)
    jh = joint_histogram(gaps, x_bins=4, s_bins=64, s_max=smax + 0.5)
    totals = jh.counts.sum(axis=1) + jh.overflow
    cdfs = np.cumsum(jh.counts, axis=1) / totals[:, None]
    worst_pair = 0.0
    for i, j in itertools.combinations(range(4), 2):
        worst_pair = max(worst_pair, float(np.max(np.abs(cdfs[i] - cdfs[j]))))

    shifted = sequence_values(E, n, "shifted")
    bins = 50
    counts, edges = np.histogram(shifted, bins=bins, range=(0.0, 1.0))
    emp_mass = counts / n
    cdf_vals = np.expm1(edges) / (math.e - 1.0)  # antiderivative of rho at b=e
    l1 = float(np.abs(emp_mass - np.diff(cdf_vals)).sum())

    ok = worst_pair <= 0.05 and l1 <= 0.02
    _report(
        "A12 x-independence N=1e5",
        ok,
        f"(pairwise sup {worst_pair:.4f}, rho L1 {l1:.4f})",
    )
    assert worst_pair <= 0.05
    assert l1 <= 0.02


def test_criterion_13_determinism(tmp_path):
    cases = [
        [
            "simulate", "--omegas", "1,1.41421356,1.73205081", "--L", "0.5",
            "--k", "0..3", "--samples", "50000", "--seed", "7",
        ],
        ["compare", "--base", "root:10:2", "--n", "5000"],
        ["empirical", "--base", "e", "--n", "3000", "--seed", "1"],
        ["theory", "--base", "int:10"],
    ]
    ok = True
    for i, args in enumerate(cases):
        a = tmp_path / f"a{i}.out"
        b = tmp_path / f"b{i}.out"
        cli_main(args + ["--out", str(a)])
        cli_main(args + ["--out", str(b)])
        ok = ok and a.read_bytes() == b.read_bytes()
    _report("A13 determinism", ok)
    assert ok
