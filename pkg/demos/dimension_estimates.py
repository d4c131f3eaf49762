#!/usr/bin/env python3
"""Three routes to dimension information for one family of measures.

Frequencies 4^j, constant modulus r: the energy criterion gives the closed
lower bound 1 - log(1+r^2/2)/log 4 (or the coarser 1 - log(1+r^2)/log 4
with the printed constants); the normalized log integral brackets the
dimension from both sides; interval masses obey an explicit Fourier-side
upper bound at every scale.
"""

import math

import numpy as np

from rieszprod import (
    CoefficientSequence,
    FrequencySequence,
    RieszSpec,
    alpha_energy_band_series,
    dimension_bounds,
    energy_dimension_bound,
    interval_measure,
    interval_upper_bound,
    local_holder,
)


def spec_with_modulus(r, count=9):
    return RieszSpec(FrequencySequence.geometric(4, count),
                     CoefficientSequence.constant(r, 0.0, count))


print("=" * 64)
print("energy criterion: convergence of the band series")
print("=" * 64)
ones = spec_with_modulus(1.0, 12)
for alpha in (0.4, 0.5, 0.6, 0.7, 0.75):
    paper = alpha_energy_band_series(ones, alpha, 11, "band_paper").verdict
    exact = alpha_energy_band_series(ones, alpha, 11, "band_exact").verdict
    print(f"  alpha={alpha:.2f}: coarse constants -> {paper:11s} "
          f"exact masses -> {exact}")
print("  (thresholds 0.5 and 1 - log 1.5/log 4 = "
      f"{1 - math.log(1.5) / math.log(4):.5f})")

print()
print("dimension lower bounds from the energy criterion:")
print("  r      coarse    exact-mass")
for r in (0.0, 0.25, 0.5, 1.0):
    s = spec_with_modulus(r, 12)
    coarse = energy_dimension_bound(s, "band_paper")
    exact = energy_dimension_bound(s, "band_exact")
    print(f"  {r:.2f}   {coarse:.5f}   {exact:.5f}")

print()
print("=" * 64)
print("normalized log integral: the dimension bracket (r = 1)")
print("=" * 64)
spec9 = spec_with_modulus(1.0, 9)
report = dimension_bounds(spec9, range(1, 6), 8)
for n, l_n in report.l_values:
    print(f"  n={n}: L_n = {l_n:.5f}   (1 - L_n = {1 - l_n:.5f})")
print(f"  bracket: [{report.lower:.5f}, {report.upper:.5f}]  "
      f"(finite-n proxy, method={report.method})")
mc = dimension_bounds(spec9, range(1, 6), 8, method="monte_carlo", seed=5,
                      samples=400_000)
print(f"  seeded Monte Carlo cross-check: [{mc.lower:.5f}, {mc.upper:.5f}]")

print()
print("=" * 64)
print("interval masses and the Fourier-side upper bound")
print("=" * 64)
rng = np.random.default_rng(3)
spec7 = spec_with_modulus(1.0, 7)
print("      t        s      mass        bound")
for _ in range(6):
    t = float(rng.uniform(0, 2 * np.pi))
    s = float(np.exp(rng.uniform(np.log(1e-3), np.log(0.5))))
    mass = interval_measure(spec7, 6, t, s)
    bound = interval_upper_bound(spec7, 2, 6, t, s)
    print(f"  {t:7.4f}  {s:7.4f}   {mass:.6f} <= {bound:.6f}")

print()
print("local scaling exponents log mu([t-s,t+s]) / log s:")
scales = [2.0 ** -k for k in range(4, 11)]
for t in (0.0, 1.0, 2.5):
    sample = local_holder(spec7, 6, t, scales)
    print(f"  t={t:.2f}: estimate {sample.alpha_estimate:.4f}  "
          f"(min ratio over the 3 smallest scales)")
