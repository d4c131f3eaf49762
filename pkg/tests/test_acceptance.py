"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one `criterion NN <name>: PASS/FAIL` line (run pytest with
-s to see them unconditionally).  Tolerances and runtime budgets are pinned
here, not configurable.
"""

import functools
import math
import time

import numpy as np

from rieszprod import (
    CoefficientSequence,
    FrequencySequence,
    IntVectorSet,
    Mesh,
    RieszSpec,
    TailDeclarations,
    alpha_energy_band_series,
    alpha_energy_direct,
    build_lambda,
    build_qi_matrix,
    classify_pair,
    closed_form_column_count,
    convolve_products,
    dimension_bounds,
    dimension_integral,
    eval_partial_product,
    expand_partial_product,
    fourier_coefficient,
    gram_centered_exponentials,
    interval_measure,
    interval_upper_bound,
    mesh_intersection,
    qi_check_bruteforce,
    qi_check_mitm,
    sidon_lower_estimate,
    sidon_union_bound,
    smooth_by_vp,
    vallee_poussin_kernel,
)

TWO_PI = 2 * math.pi


def criterion(number, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper():
            try:
                fn()
            except BaseException:
                print(f"criterion {number:02d} {name}: FAIL")
                raise
            print(f"criterion {number:02d} {name}: PASS")
        return wrapper
    return decorate


def random_coefficients(rng, count):
    return CoefficientSequence(tuple(rng.uniform(0, 1, count)),
                               tuple(rng.uniform(0, TWO_PI, count)))


def geometric4(count, coeffs=None, r=1.0):
    freqs = FrequencySequence.geometric(4, count)
    if coeffs is None:
        coeffs = CoefficientSequence.constant(r, 0.0, count)
    return RieszSpec(freqs, coeffs)


@criterion(1, "expansion identities")
def test_criterion_01_expansion_identities():
    start = time.perf_counter()
    rng = np.random.default_rng(1001)
    count = 8
    for _ in range(50):
        spec = geometric4(count, random_coefficients(rng, count))
        lams = spec.freqs.values
        assert fourier_coefficient(spec, 0, count - 1).value == 1.0
        for j in range(count):
            value = fourier_coefficient(spec, lams[j], count - 1).value
            assert abs(value - spec.coefficient(j) / 2) <= 1e-12
        for j, k in ((0, 1), (2, 5), (1, 6)):
            value = fourier_coefficient(spec, lams[j] + lams[k], count - 1).value
            expected = spec.coefficient(j) * spec.coefficient(k) / 4
            assert abs(value - expected) <= 1e-12
    assert time.perf_counter() - start < 1.0


@criterion(2, "Parseval identity")
def test_criterion_02_parseval():
    start = time.perf_counter()
    rng = np.random.default_rng(1002)
    for _ in range(10):
        spec = geometric4(7, random_coefficients(rng, 7))
        for n in range(7):
            poly = expand_partial_product(spec, n)
            total = sum((c * c.conjugate()).real
                        for c in poly.coefficients.values())
            expected = math.prod(1 + spec.coeffs.moduli[j] ** 2 / 2
                                 for j in range(n + 1))
            assert abs(total - expected) <= 1e-12
    assert time.perf_counter() - start < 1.0


@criterion(3, "Gram system")
def test_criterion_03_gram_system():
    rng = np.random.default_rng(1003)
    spec = geometric4(7, random_coefficients(rng, 7))
    depth = 5
    # exact values in coefficient algebra
    for j in range(depth + 1):
        for k in range(depth + 1):
            value = gram_centered_exponentials(spec, j, k, depth)
            if j == k:
                a = spec.coefficient(j)
                expected = 1.0 - (a * a.conjugate()).real / 4
                assert abs(value - expected) <= 1e-15
            else:
                assert abs(value) <= 1e-15
    # grid quadrature with more than 2x the integrand degree in nodes
    lams = spec.freqs.values
    nodes = 2 * (spec.freqs.prefix_sum(depth) + 2 * lams[depth]) + 1
    grid = TWO_PI * np.arange(nodes) / nodes
    density = eval_partial_product(spec, depth, grid)
    for j in range(depth + 1):
        for k in range(depth + 1):
            f_j = np.exp(1j * lams[j] * grid) - spec.coefficient(j).conjugate() / 2
            f_k = np.exp(1j * lams[k] * grid) - spec.coefficient(k).conjugate() / 2
            quad = np.mean(f_j * np.conj(f_k) * density)
            assert abs(quad - gram_centered_exponentials(spec, j, k, depth)) <= 1e-6


@criterion(4, "convolution theorem")
def test_criterion_04_convolution():
    rng = np.random.default_rng(1004)
    count = 6
    spec_a = geometric4(count, random_coefficients(rng, count))
    spec_b = geometric4(count, random_coefficients(rng, count))
    conv = convolve_products(expand_partial_product(spec_a, count - 1),
                             expand_partial_product(spec_b, count - 1))
    halved = RieszSpec(spec_a.freqs, CoefficientSequence.from_complex(
        [spec_a.coefficient(j) * spec_b.coefficient(j) / 2 for j in range(count)]))
    direct = expand_partial_product(halved, count - 1)
    assert set(conv.coefficients) == set(direct.coefficients)
    for m, c in direct.coefficients.items():
        assert abs(conv.coefficient(m) - c) <= 1e-12
    # dilation: disjoint spectra collapse the convolution to Lebesgue
    ones = geometric4(count)
    dilated = RieszSpec(FrequencySequence(tuple(2 * 4 ** j for j in range(count))),
                        CoefficientSequence.constant(1.0, 0.0, count))
    flat = convolve_products(expand_partial_product(ones, count - 1),
                             expand_partial_product(dilated, count - 1))
    assert flat.coefficients == {0: 1.0 + 0j}


@criterion(5, "energy thresholds")
def test_criterion_05_energy_thresholds():
    for a in (0.25, 0.5, 1.0):
        spec = geometric4(12, r=a)
        alpha_star = 1 - math.log(1 + a * a) / math.log(4)
        for k in range(-10, 11):
            alpha = alpha_star + k * 1e-3
            if not 0 < alpha < 1:
                continue
            verdict = alpha_energy_band_series(spec, alpha, 11,
                                               "band_paper").verdict
            threshold = 4 ** (alpha - 1) * (1 + a * a) < 1
            if k < 0:
                assert threshold and verdict == "convergent"
            elif k > 0:
                assert not threshold and verdict == "divergent"
    # exact band masses against direct summation through band 6
    rng = np.random.default_rng(1005)
    for alpha in (0.3, 0.6, 0.9):
        spec = geometric4(7, random_coefficients(rng, 7))
        band = alpha_energy_band_series(spec, alpha, 6, "band_exact")
        poly = expand_partial_product(spec, 6)
        direct = alpha_energy_direct(poly, alpha, poly.degree)
        for i, edge in enumerate(band.cutoffs):
            below = [ps for c, ps in zip(direct.cutoffs, direct.partial_sums)
                     if c <= edge]
            assert abs((below[-1] if below else 0.0)
                       - band.partial_sums[i]) <= 1e-10


@criterion(6, "dimension bracket sanity")
def test_criterion_06_dimension_bracket():
    start = time.perf_counter()
    flat = geometric4(7, r=0.0)
    report = dimension_bounds(flat, range(1, 4), 6)
    assert report.lower == 1.0 and report.upper == 1.0
    ones = geometric4(9)
    for n in range(1, 6):
        quad = dimension_integral(ones, n, 8, "quadrature")
        mc = dimension_integral(ones, n, 8, "monte_carlo", seed=5,
                                samples=400_000)
        assert abs(quad - mc) <= 3e-3
        assert 1.0 - quad >= 0.5 - 0.02
    assert time.perf_counter() - start < 60.0


@criterion(7, "kernel identity")
def test_criterion_07_kernel_identity():
    rng = np.random.default_rng(1007)
    spec = geometric4(7, random_coefficients(rng, 7))
    grid = TWO_PI * np.arange(10_000) / 10_000
    for n in range(5):
        assert spec.freqs.gap(n)  # 4^{n+1} > 3 (4^{n+1}-1)/3
        p = spec.freqs.prefix_sum(n)
        smoothed_poly = convolve_products(vallee_poussin_kernel(p),
                                          expand_partial_product(spec, 6))
        assert smoothed_poly == expand_partial_product(spec, n)
        values = smooth_by_vp(spec, n, 6, grid)
        direct = eval_partial_product(spec, n, grid)
        assert np.max(np.abs(values - direct)) <= 1e-8


@criterion(8, "interval upper bound")
def test_criterion_08_interval_bound():
    for seed in range(10):
        rng = np.random.default_rng(2000 + seed)
        spec = geometric4(7, random_coefficients(rng, 7))
        for _ in range(100):
            t = float(rng.uniform(0, TWO_PI))
            s = float(np.exp(rng.uniform(math.log(1e-3), math.log(math.pi))))
            measure = interval_measure(spec, 6, t, s)
            bound = interval_upper_bound(spec, 2, 6, t, s)
            assert bound >= measure - 1e-12


@criterion(9, "quasi-independent construction")
def test_criterion_09_qi_construction():
    start = time.perf_counter()
    for nu in (1, 2):
        columns = IntVectorSet.from_vectors(build_qi_matrix(nu).columns())
        assert qi_check_bruteforce(columns).quasi_independent
    columns3 = IntVectorSet.from_vectors(build_qi_matrix(3).columns())
    assert qi_check_mitm(columns3).quasi_independent
    previous = 1
    for nu in range(1, 9):
        count = closed_form_column_count(nu)
        assert count == 2 ** (nu - 1) * (2 + nu)
        assert count == 2 * previous + 2 ** (nu - 1)
        assert build_qi_matrix(nu).column_count == count
        previous = count
    lam = build_lambda(2)
    assert qi_check_bruteforce(
        IntVectorSet.from_integers(lam.gamma)).quasi_independent
    assert time.perf_counter() - start < 120.0


@criterion(10, "mesh sharpness")
def test_criterion_10_mesh_sharpness():
    for nu in range(1, 7):
        lam = build_lambda(nu)
        expected = closed_form_column_count(nu)
        gens = list(lam.base.block(nu))
        scale = 4 * (sum(gens) + max(abs(g) for g in lam.gamma) + 1)
        pads = [scale * 3 ** i for i in range(2 ** nu)]
        for k in range(2 ** nu, 2 ** (nu + 1)):
            mesh = Mesh.unit_box(gens + pads[: k - 2 ** nu])
            count = mesh_intersection(lam, mesh).count
            assert count == expected
            assert count >= 0.25 * k * math.log2(k)
            if k == 2 ** nu:
                assert count > 0.5 * k * math.log2(k)


@criterion(11, "Sidon bounds")
def test_criterion_11_sidon_bounds():
    assert abs(sidon_union_bound(1) - 3 * math.sqrt(3)) <= 1e-9
    ceiling = 3 * math.sqrt(3) + 1e-9
    lam = build_lambda(2)
    test_sets = (
        ([5], 3),
        ([1, 4, 16, 64], 40),
        ([3, 4, 5], 30),
        (list(lam.block_values(1)), 30),
    )
    for values, trials in test_sets:
        vset = IntVectorSet.from_integers(values)
        checker = qi_check_bruteforce(vset)
        assert checker.quasi_independent  # only certify on qi sets
        estimate = sidon_lower_estimate(values, trials=trials, seed=7)
        assert estimate.lower_bound <= ceiling


@criterion(12, "classifier canonical pairs")
def test_criterion_12_classifier():
    freqs = FrequencySequence.geometric(4, 32)

    equal = RieszSpec(freqs, CoefficientSequence.constant(0.7, 0.2, 32))
    verdict = classify_pair(equal, equal)
    assert verdict.outcome == "equivalent"
    assert verdict.criterion == "trivial_equal"

    zero = RieszSpec(freqs, CoefficientSequence.constant(0.0, 0.0, 32))
    harmonic = RieszSpec(freqs, CoefficientSequence(
        tuple(1 / math.sqrt(j + 1) for j in range(32)), (0.0,) * 32))
    verdict = classify_pair(zero, harmonic, TailDeclarations(l2_gap="divergent"))
    assert verdict.outcome == "mutually_singular"
    assert verdict.criterion == "l2_gap_divergent"

    half = RieszSpec(freqs, CoefficientSequence.constant(0.5, 0.0, 32))
    tilted = RieszSpec(freqs, CoefficientSequence(
        (0.5,) * 32, tuple(2.0 ** -j for j in range(32))))
    verdict = classify_pair(half, tilted, TailDeclarations(l2_gap="convergent"))
    assert verdict.outcome == "equivalent"
    assert verdict.criterion == "equal_moduli_l2_gap_convergent"


@criterion(13, "oracle equivalence of the checkers")
def test_criterion_13_oracle_equivalence():
    rng = np.random.default_rng(1013)
    negatives = 0
    for _ in range(200):
        k = int(rng.integers(2, 13))
        values = set()
        while len(values) < k:
            values.add(int(rng.integers(1, 10 ** 6)))
        vset = IntVectorSet.from_integers(sorted(values))
        brute = qi_check_bruteforce(vset)
        mitm = qi_check_mitm(vset)
        assert brute.quasi_independent == mitm.quasi_independent
        for result in (brute, mitm):
            if not result.quasi_independent:
                negatives += 1
                combo = result.witness.apply(vset.elements)
                assert all(x == 0 for x in combo)
                assert not result.witness.is_trivial
    assert negatives > 0  # the suite exercised the witness path
