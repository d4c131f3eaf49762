"""Exact Fourier-side representation of Riesz products on the circle.

A Riesz product is the (formal) infinite product

    prod_j (1 + Re(a_j e^{i lambda_j t})),    |a_j| <= 1,

over an increasing integer frequency sequence (lambda_j).  When successive
ratios are >= 3 ("lacunary3" regime) the partial products expand without
interference: every nonzero frequency has a unique representation
sum_j eps_j lambda_j with eps_j in {-1,0,1}, and the coefficient there is
prod_{eps_j=1} a_j/2 * prod_{eps_j=-1} conj(a_j)/2.  The partial products
are nonnegative with mean value 1, so they are densities of probability
measures; everything downstream (classification, dimension estimates) is
computed from these sparse expansions.

The "dyadic" regime (lambda_j = 2^j with sup |a_j| < 1) is also supported
for expansion and pointwise evaluation; there colliding sign patterns
aggregate and the band/Gram machinery refuses to run.

All types are immutable values; all operations are pure functions.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

LACUNARY3 = "lacunary3"
DYADIC = "dyadic"
REGIMES = (LACUNARY3, DYADIC)

PHASE_GENERATOR = "numpy-pcg64"

# sparse expansions hold up to 3^(n+1) terms; beyond this the dict blows up
MAX_EXPANSION_DEPTH = 12

TWO_PI = 2.0 * math.pi


class ValidationError(ValueError):
    """A spec or argument violates one of the structural conditions.

    ``condition`` names the violated rule (e.g. "modulus_bound",
    "lacunarity_ratio"); ``index`` locates it when meaningful.
    """

    def __init__(self, message: str, condition: str = "", index: int | None = None):
        super().__init__(message)
        self.condition = condition
        self.index = index


class RegimeError(ValidationError):
    """Operation not defined for the spec's regime."""


class StabilityError(ValidationError):
    """Requested coefficient is not stable at the given depth."""


class SpectralGapError(ValidationError):
    """The spectral-gap predicate required by a kernel identity fails."""


class CapError(RuntimeError):
    """A size/resource cap was exceeded; the request is refused, not wrong."""


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrequencySequence:
    """Strictly increasing positive integer frequencies lambda_0 < ... < lambda_J."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValidationError("frequency sequence is empty", "frequencies")
        for j, v in enumerate(vals):
            if v < 1:
                raise ValidationError(
                    f"frequency at index {j} is {v}, must be >= 1",
                    "positivity", j)
        for j in range(len(vals) - 1):
            if vals[j + 1] <= vals[j]:
                raise ValidationError(
                    f"frequencies must be strictly increasing, violated at index {j + 1}",
                    "monotonicity", j + 1)

    @classmethod
    def geometric(cls, base: int, count: int) -> "FrequencySequence":
        """lambda_j = base**j for j = 0..count-1."""
        if base < 2:
            raise ValidationError(f"geometric base must be >= 2, got {base}", "base")
        if count < 1:
            raise ValidationError(f"count must be >= 1, got {count}", "count")
        return cls(tuple(base ** j for j in range(count)))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def last_index(self) -> int:
        return len(self.values) - 1

    @property
    def ratio_min(self) -> float:
        if len(self.values) < 2:
            return math.inf
        return min(self.values[j + 1] / self.values[j] for j in range(len(self.values) - 1))

    @property
    def ratio_max(self) -> float:
        if len(self.values) < 2:
            return 1.0
        return max(self.values[j + 1] / self.values[j] for j in range(len(self.values) - 1))

    def prefix_sum(self, n: int) -> int:
        """sum_{i<=n} lambda_i (exact integer)."""
        return sum(self.values[: n + 1])

    def gap(self, n: int) -> bool:
        """True iff lambda_{n+1} > 3 * sum_{i<=n} lambda_i.

        Under this predicate the frequency bands up to n are separated from
        everything above by more than the bandwidth itself, which is what
        the kernel-smoothing identity needs.
        """
        if n + 1 > self.last_index:
            raise ValidationError(
                f"gap({n}) needs frequency index {n + 1}, sequence ends at {self.last_index}",
                "index", n)
        return self.values[n + 1] > 3 * self.prefix_sum(n)

    def spectral_margin(self, j: int) -> int:
        """lambda_{j+1} - sum_{i<=j} lambda_i: every frequency introduced
        after depth j exceeds this."""
        if j + 1 > self.last_index:
            raise ValidationError(
                f"spectral_margin({j}) needs frequency index {j + 1}",
                "index", j)
        return self.values[j + 1] - self.prefix_sum(j)

    def is_geometric(self) -> int | None:
        """The common integer ratio if lambda_j = lambda_0 * q^j, else None."""
        if len(self.values) < 2:
            return None
        q, rem = divmod(self.values[1], self.values[0])
        if rem != 0 or q < 2:
            return None
        for j in range(len(self.values) - 1):
            if self.values[j + 1] != self.values[j] * q:
                return None
        return q


def _canonical_phase(r: float, theta: float) -> float:
    if r == 0.0:
        return 0.0
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    return theta


@dataclass(frozen=True)
class CoefficientSequence:
    """Complex coefficients a_j stored as moduli r_j >= 0 and phases in [0, 2pi).

    Canonical form: r_j = 0 forces theta_j = 0, so coefficient equality is
    well defined.  The modulus bound r_j <= 1 is a *spec* condition checked
    by ``validate_spec``, not a construction-time constraint (rejected specs
    must be expressible).
    """

    moduli: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(x) for x in self.moduli)
        th = tuple(float(x) for x in self.phases)
        if len(r) != len(th):
            raise ValidationError("moduli and phases length mismatch", "length")
        for j, x in enumerate(r):
            if not math.isfinite(x) or x < 0.0:
                raise ValidationError(
                    f"modulus at index {j} is {x}, must be finite and >= 0",
                    "modulus", j)
        th = tuple(_canonical_phase(r[j], th[j]) for j in range(len(r)))
        object.__setattr__(self, "moduli", r)
        object.__setattr__(self, "phases", th)

    @classmethod
    def from_complex(cls, values: Iterable[complex]) -> "CoefficientSequence":
        vals = [complex(v) for v in values]
        return cls(tuple(abs(v) for v in vals),
                   tuple(math.atan2(v.imag, v.real) if v != 0 else 0.0 for v in vals))

    @classmethod
    def constant(cls, r: float, theta: float, count: int) -> "CoefficientSequence":
        return cls((r,) * count, (theta,) * count)

    def __len__(self) -> int:
        return len(self.moduli)

    def value(self, j: int) -> complex:
        r = self.moduli[j]
        if r == 0.0:
            return 0j
        return r * complex(math.cos(self.phases[j]), math.sin(self.phases[j]))

    def values(self) -> tuple[complex, ...]:
        return tuple(self.value(j) for j in range(len(self)))

    @property
    def sup_modulus(self) -> float:
        return max(self.moduli) if self.moduli else 0.0


@dataclass(frozen=True)
class RieszSpec:
    """Frequencies plus coefficients plus the regime they are meant for."""

    freqs: FrequencySequence
    coeffs: CoefficientSequence
    regime: str = LACUNARY3
    phase_seed: int | None = None
    phase_generator: str | None = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValidationError(f"unknown regime {self.regime!r}", "regime")
        if len(self.freqs) != len(self.coeffs):
            raise ValidationError(
                f"{len(self.freqs)} frequencies but {len(self.coeffs)} coefficients",
                "length")

    @property
    def last_index(self) -> int:
        return self.freqs.last_index

    def coefficient(self, j: int) -> complex:
        return self.coeffs.value(j)


def validate_spec(spec: RieszSpec) -> RieszSpec:
    """Check the structural conditions of the spec's regime and return it.

    lacunary3: lambda_{j+1}/lambda_j >= 3 for all j, and every |a_j| <= 1.
    dyadic:    lambda_j = 2^j exactly, and sup |a_j| < 1 strictly.

    Raises ValidationError naming the violated condition and index.
    """
    for j, r in enumerate(spec.coeffs.moduli):
        if r > 1.0:
            raise ValidationError(
                f"modulus bound |a_j| <= 1 violated at index {j}: {r}",
                "modulus_bound", j)
    vals = spec.freqs.values
    if spec.regime == LACUNARY3:
        for j in range(len(vals) - 1):
            if vals[j + 1] < 3 * vals[j]:
                raise ValidationError(
                    f"lacunarity ratio lambda_(j+1)/lambda_j >= 3 violated at index {j}: "
                    f"{vals[j + 1]}/{vals[j]} = {vals[j + 1] / vals[j]:.4g}"
                    " (declare the dyadic regime if lambda_j = 2^j was intended)",
                    "lacunarity_ratio", j)
    else:
        for j, v in enumerate(vals):
            if v != 2 ** j:
                raise ValidationError(
                    f"dyadic regime requires lambda_j = 2^j, violated at index {j}: {v}",
                    "dyadic_frequencies", j)
        if spec.coeffs.sup_modulus >= 1.0:
            j = spec.coeffs.moduli.index(spec.coeffs.sup_modulus)
            raise ValidationError(
                f"dyadic regime requires sup |a_j| < 1, violated at index {j}: "
                f"{spec.coeffs.sup_modulus}",
                "dyadic_modulus", j)
    return spec


@dataclass(frozen=True)
class SignPattern:
    """Finite map j -> eps_j in {-1,+1} (zeros omitted)."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ent = tuple(sorted((int(j), int(e)) for j, e in self.entries))
        for j, e in ent:
            if e not in (-1, 1):
                raise ValidationError(f"sign at index {j} is {e}, must be -1 or +1",
                                      "sign", j)
        if len({j for j, _ in ent}) != len(ent):
            raise ValidationError("duplicate index in sign pattern", "sign")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> "SignPattern":
        return cls(tuple((j, int(e)) for j, e in enumerate(signs) if e != 0))

    def sign(self, j: int) -> int:
        for i, e in self.entries:
            if i == j:
                return e
        return 0

    def signs(self, length: int) -> tuple[int, ...]:
        out = [0] * length
        for j, e in self.entries:
            out[j] = e
        return tuple(out)

    @property
    def is_trivial(self) -> bool:
        return not self.entries

    def frequency(self, freqs: Sequence[int]) -> int:
        """sum_j eps_j * freqs[j], exact."""
        return sum(e * freqs[j] for j, e in self.entries)

    def apply(self, vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Componentwise sum_j eps_j * vectors[j]."""
        dim = len(vectors[0]) if vectors else 0
        out = [0] * dim
        for j, e in self.entries:
            v = vectors[j]
            for i in range(dim):
                out[i] += e * v[i]
        return tuple(out)


def _is_hermitian(coeffs: Mapping[int, complex]) -> bool:
    for m, c in coeffs.items():
        if coeffs.get(-m) != c.conjugate():
            return False
    return True


@dataclass(frozen=True)
class TrigPolynomial:
    """Finite sparse map integer frequency -> complex coefficient.

    ``real_valued`` flags Hermitian symmetry c_{-m} = conj(c_m); evaluation
    then returns real values.  Exact zero coefficients are pruned at
    construction so support queries are well defined.
    """

    coefficients: Mapping[int, complex]
    real_valued: bool = field(default=False, compare=False)

    def __post_init__(self):
        pruned = {int(m): complex(c) for m, c in self.coefficients.items() if c != 0}
        object.__setattr__(self, "coefficients", pruned)
        object.__setattr__(self, "real_valued", _is_hermitian(pruned))

    def __eq__(self, other) -> bool:
        return isinstance(other, TrigPolynomial) and self.coefficients == other.coefficients

    def coefficient(self, m: int) -> complex:
        return self.coefficients.get(m, 0j)

    @property
    def degree(self) -> int:
        return max((abs(m) for m in self.coefficients), default=0)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coefficients))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        ms = np.array(sorted(self.coefficients), dtype=np.int64)
        cs = np.array([self.coefficients[int(m)] for m in ms], dtype=np.complex128)
        return ms, cs

    def evaluate(self, t):
        """sum_m c_m e^{imt}; real array/scalar when Hermitian."""
        ms, cs = self.arrays()
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.exp(1j * np.outer(tt, ms)) @ cs
        if self.real_valued:
            out = out.real
        if np.isscalar(t) or np.ndim(t) == 0:
            return out[0]
        return out

    def __mul__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        if len(self.coefficients) > len(other.coefficients):
            self, other = other, self
        out: dict[int, complex] = {}
        for m1, c1 in self.coefficients.items():
            for m2, c2 in other.coefficients.items():
                m = m1 + m2
                out[m] = out.get(m, 0j) + c1 * c2
        return TrigPolynomial(out)


@dataclass(frozen=True)
class SpectralBand:
    """Positive frequencies of the expansion whose top participating index is n."""

    index: int
    lo: int
    hi: int
    freqs: tuple[int, ...]


@dataclass(frozen=True)
class FourierCoefficient:
    value: complex
    stable: bool


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _check_depth(spec: RieszSpec, n: int, name: str = "depth") -> None:
    if not 0 <= n <= spec.last_index:
        raise ValidationError(
            f"{name}={n} out of range [0, {spec.last_index}]", "index", n)


@functools.lru_cache(maxsize=16)
def _expansion(spec: RieszSpec, n: int) -> TrigPolynomial:
    if n > MAX_EXPANSION_DEPTH:
        raise CapError(
            f"expansion to depth {n} needs up to 3^{n + 1} terms; cap is "
            f"depth {MAX_EXPANSION_DEPTH}")
    coeffs: dict[int, complex] = {0: 1.0 + 0j}
    for j in range(n + 1):
        a = spec.coefficient(j)
        if a == 0:
            continue
        lam = spec.freqs.values[j]
        half = a / 2
        half_conj = half.conjugate()
        out: dict[int, complex] = {}
        for m, c in coeffs.items():
            out[m] = out.get(m, 0j) + c
            up = m + lam
            out[up] = out.get(up, 0j) + c * half
            dn = m - lam
            out[dn] = out.get(dn, 0j) + c * half_conj
        coeffs = out
    return TrigPolynomial(coeffs)


def expand_partial_product(spec: RieszSpec, n: int) -> TrigPolynomial:
    """Exact sparse expansion of the partial product through factor n.

    Computed by iterated sparse multiplication with the three-term factor
    1 + (a_j/2) e^{i lambda_j t} + (conj(a_j)/2) e^{-i lambda_j t}.  In the
    lacunary3 regime no frequencies collide; in the dyadic regime colliding
    sign patterns aggregate.  The mean value (coefficient at 0) is 1.
    """
    validate_spec(spec)
    _check_depth(spec, n, "n")
    return _expansion(spec, n)


def eval_partial_product(spec: RieszSpec, n: int, t):
    """Pointwise value prod_{j<=n} (1 + r_j cos(lambda_j t + theta_j)).

    Evaluated factor by factor (never via the expansion) so nonnegativity
    is preserved numerically.  Accepts scalars or arrays.
    """
    validate_spec(spec)
    _check_depth(spec, n, "n")
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.ones_like(tt)
    for j in range(n + 1):
        r = spec.coeffs.moduli[j]
        if r == 0.0:
            continue
        out *= 1.0 + r * np.cos(spec.freqs.values[j] * tt + spec.coeffs.phases[j])
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out[0])
    return out


def _representation(freqs: FrequencySequence, m: int, depth: int) -> SignPattern | None:
    """The unique pattern with sum eps_j lambda_j = m using indices <= depth.

    Valid in the lacunary3 regime only: the intervals
    [lambda_j - S_{j-1}, lambda_j + S_{j-1}] are pairwise disjoint, so the
    top index of any representation is forced and the residual recurses.
    """
    vals = freqs.values
    prefix = [0]
    for v in vals:
        prefix.append(prefix[-1] + v)  # prefix[j+1] = sum_{i<=j} lambda_i
    entries = []
    x = m
    j = depth
    while x != 0:
        ax = abs(x)
        top = None
        while j >= 0:
            if vals[j] - prefix[j] <= ax <= vals[j] + prefix[j]:
                top = j
                break
            if vals[j] + prefix[j] < ax:
                return None  # above every reachable window
            j -= 1
        if top is None:
            return None
        e = 1 if x > 0 else -1
        entries.append((top, e))
        x -= e * vals[top]
        j = top - 1
    return SignPattern(tuple(entries))


def _pattern_coefficient(spec: RieszSpec, pattern: SignPattern) -> complex:
    c = 1.0 + 0j
    for j, e in pattern.entries:  # ascending index, matching expansion order
        a = spec.coefficient(j)
        c = c * (a / 2 if e == 1 else a.conjugate() / 2)
    return c


def _stable_at(spec: RieszSpec, m: int, depth: int) -> bool:
    if depth >= spec.last_index:
        return True
    s = spec.freqs.prefix_sum(depth)
    return abs(m) <= s and spec.freqs.values[depth + 1] - s > abs(m)


def fourier_coefficient(spec: RieszSpec, m: int, depth: int) -> FourierCoefficient:
    """Coefficient of e^{imt} in the depth-truncated expansion, with a
    stability flag.

    ``stable`` means the value can no longer change when further factors are
    appended: |m| <= sum_{i<=depth} lambda_i and the next frequency clears
    that sum by more than |m| (always true at the final index).
    """
    validate_spec(spec)
    _check_depth(spec, depth, "depth")
    stable = _stable_at(spec, m, depth)
    if spec.regime == DYADIC:
        value = _expansion(spec, depth).coefficient(m)
        return FourierCoefficient(value, stable)
    pattern = _representation(spec.freqs, m, depth)
    if pattern is None:
        return FourierCoefficient(0j, stable)
    value = _pattern_coefficient(spec, pattern)
    return FourierCoefficient(value, stable)


def spectrum_bands(spec: RieszSpec, depth: int) -> list[SpectralBand]:
    """Positive expansion frequencies grouped by highest participating index.

    Band n sits inside [lambda_n - S_{n-1}, lambda_n + S_{n-1}]; successive
    bands are disjoint in the lacunary3 regime (dyadic is refused, since
    interference destroys the grouping).
    """
    validate_spec(spec)
    if spec.regime != LACUNARY3:
        raise RegimeError("spectrum bands are only defined in the lacunary3 regime",
                          "regime")
    _check_depth(spec, depth, "depth")
    poly = _expansion(spec, depth)
    groups: dict[int, list[int]] = {}
    for m in poly.support():
        if m <= 0:
            continue
        pattern = _representation(spec.freqs, m, depth)
        top = pattern.entries[-1][0]
        groups.setdefault(top, []).append(m)
    return [
        SpectralBand(n, min(fs), max(fs), tuple(sorted(fs)))
        for n, fs in sorted(groups.items())
    ]


def convolve_products(p: TrigPolynomial, q: TrigPolynomial) -> TrigPolynomial:
    """Convolution of the underlying measures: pointwise coefficient product."""
    small, big = (p, q) if len(p.coefficients) <= len(q.coefficients) else (q, p)
    out = {}
    for m, c in small.coefficients.items():
        other = big.coefficients.get(m)
        if other is not None:
            out[m] = c * other
    return TrigPolynomial(out)


def randomize_phases(spec: RieszSpec, seed: int) -> RieszSpec:
    """Rotate each phase by an independent uniform angle on [0, 2pi).

    Deterministic for a fixed seed; moduli are unchanged.  The seed and
    generator name are carried on the returned spec for reproducibility.
    """
    rng = np.random.default_rng(seed)
    omega = rng.uniform(0.0, TWO_PI, len(spec.coeffs))
    new_phases = tuple(
        (spec.coeffs.phases[j] + float(omega[j])) % TWO_PI
        for j in range(len(spec.coeffs))
    )
    coeffs = CoefficientSequence(spec.coeffs.moduli, new_phases)
    return replace(spec, coeffs=coeffs, phase_seed=seed,
                   phase_generator=PHASE_GENERATOR)


def gram_centered_exponentials(spec: RieszSpec, j: int, k: int, depth: int) -> complex:
    """Inner product in L^2 of the measure of the centered exponentials
    f_j = e^{i lambda_j t} - conj(a_j)/2.

    Computed exactly in coefficient algebra: with c_m the expansion
    coefficients, int e^{imt} dmu = c_{-m}, so

        <f_j, f_k> = c_{lambda_k - lambda_j} - (a_k/2) c_{-lambda_j}
                     - (conj(a_j)/2) c_{lambda_k} + conj(a_j) a_k / 4 * c_0.

    Equals delta_{jk} (1 - |a_j|^2/4): the family is orthogonal with norms
    bounded between two positive constants.
    """
    validate_spec(spec)
    if spec.regime != LACUNARY3:
        raise RegimeError("the Gram system requires the lacunary3 regime", "regime")
    _check_depth(spec, depth, "depth")
    if j > depth or k > depth:
        raise ValidationError(f"indices j={j}, k={k} must be <= depth={depth}",
                              "index")
    lam_j = spec.freqs.values[j]
    lam_k = spec.freqs.values[k]
    needed = (lam_k - lam_j, -lam_j, lam_k, 0)
    coeffs = {}
    for m in needed:
        fc = fourier_coefficient(spec, m, depth)
        if not fc.stable:
            raise StabilityError(
                f"coefficient at frequency {m} is not stable at depth {depth}; "
                "increase depth", "stability")
        coeffs[m] = fc.value
    a_j = spec.coefficient(j)
    a_k = spec.coefficient(k)
    return (coeffs[lam_k - lam_j]
            - (a_k / 2) * coeffs[-lam_j]
            - (a_j.conjugate() / 2) * coeffs[lam_k]
            + (a_j.conjugate() * a_k / 4) * coeffs[0])
