"""Seedable splitmix64 stream and the variate generators used by the sweeps.

Two routes produce the same numbers:

* ``SplitMix64`` plus the ``sample_*`` functions are plain Python, one draw
  at a time.  They are the reference.
* ``generate_keys`` fills a whole key array inside a numba kernel.  Sweeps
  use it because it is fast.

Integer-valued streams agree bit for bit.  Real-valued streams agree to
within libm rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit, uint64

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

#: Largest Poisson mean accepted; exp(-lam) underflows long before 746.
POISSON_MAX_LAMBDA = 100.0

FAMILIES = (
    "discrete_uniform",
    "poisson",
    "geometric",
    "continuous_uniform",
    "exponential",
    "normal",
)


class ParameterError(ValueError):
    """A distribution parameter is outside its domain."""


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix_next(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; returns ``(output, new_state)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    return mix64(state), state


def splitmix_output_at(seed: int, k: int) -> int:
    """The k-th output (1-based) of the stream seeded with *seed*, in O(1)."""
    return mix64((seed + k * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    """Mutable splitmix64 generator.

    Each trial should own one instance.  ``normal_cache`` holds the second
    Box-Muller variate between calls.
    """

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64
        self.normal_cache: float | None = None

    def next_u64(self) -> int:
        value, self.state = splitmix_next(self.state)
        return value

    def next_unit(self) -> float:
        """Uniform real in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53


def sample_discrete_uniform(k: int, rng: SplitMix64) -> int:
    if k < 1 or int(k) != k:
        raise ParameterError(f"discrete uniform needs integer K >= 1, got {k}")
    return math.floor(k * rng.next_unit()) + 1


def sample_poisson(lam: float, rng: SplitMix64) -> int:
    """Product-of-uniforms method: count uniforms until the product drops
    below exp(-lam)."""
    if not 0 < lam <= POISSON_MAX_LAMBDA:
        raise ParameterError(f"poisson needs 0 < lambda <= {POISSON_MAX_LAMBDA}, got {lam}")
    limit = math.exp(-lam)
    prod = rng.next_unit()
    count = 0
    while prod >= limit:
        prod *= rng.next_unit()
        count += 1
    return count


def sample_geometric(p: float, rng: SplitMix64) -> int:
    """Number of failures before the first success."""
    if not 0 < p <= 1:
        raise ParameterError(f"geometric needs 0 < p <= 1, got {p}")
    u = rng.next_unit()
    if p == 1:
        return 0
    return math.floor(math.log(1.0 - u) / math.log(1.0 - p))


def sample_continuous_uniform(theta: float, rng: SplitMix64) -> float:
    if not theta > 0:
        raise ParameterError(f"continuous uniform needs theta > 0, got {theta}")
    return theta * rng.next_unit()


def sample_exponential(lam: float, rng: SplitMix64) -> float:
    if not lam > 0:
        raise ParameterError(f"exponential needs lambda > 0, got {lam}")
    return -math.log(1.0 - rng.next_unit()) / lam


def sample_normal(mu: float, sigma: float, rng: SplitMix64) -> float:
    """Box-Muller.  Variates come in pairs; the sine half is cached on *rng*."""
    if not sigma > 0:
        raise ParameterError(f"normal needs sigma > 0, got {sigma}")
    if rng.normal_cache is not None:
        z = rng.normal_cache
        rng.normal_cache = None
        return mu + sigma * z
    u1 = 1.0 - rng.next_unit()
    u2 = rng.next_unit()
    r = math.sqrt(-2.0 * math.log(u1))
    rng.normal_cache = r * math.sin(2.0 * math.pi * u2)
    return mu + sigma * (r * math.cos(2.0 * math.pi * u2))


_ALIASES = {"lam": "lambda", "l": "lambda", "K": "k", "P": "p", "m": "mu"}


@dataclass(frozen=True)
class DistributionSpec:
    """A distribution family with validated parameters.

    Parameter names: ``k`` (discrete_uniform), ``lambda`` (poisson,
    exponential), ``p`` (geometric), ``theta`` (continuous_uniform), ``mu``
    with ``sigma`` or ``variance`` (normal).
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown distribution family {self.family!r}")
        params = {_ALIASES.get(k, k): float(v) for k, v in self.params.items()}
        if self.family == "normal" and "variance" in params:
            var = params.pop("variance")
            if not var > 0:
                raise ParameterError(f"normal needs variance > 0, got {var}")
            params.setdefault("sigma", math.sqrt(var))
        expected = {
            "discrete_uniform": {"k"},
            "poisson": {"lambda"},
            "geometric": {"p"},
            "continuous_uniform": {"theta"},
            "exponential": {"lambda"},
            "normal": {"mu", "sigma"},
        }[self.family]
        if set(params) != expected:
            raise ParameterError(
                f"{self.family} takes parameters {sorted(expected)}, got {sorted(params)}"
            )
        if self.family == "discrete_uniform":
            params["k"] = int(params["k"]) if params["k"] == int(params["k"]) else params["k"]
        object.__setattr__(self, "params", params)
        # one throwaway draw runs the family's domain checks
        self.sample(_NullRng())

    def sample(self, rng: SplitMix64):
        p = self.params
        if self.family == "discrete_uniform":
            return sample_discrete_uniform(p["k"], rng)
        if self.family == "poisson":
            return sample_poisson(p["lambda"], rng)
        if self.family == "geometric":
            return sample_geometric(p["p"], rng)
        if self.family == "continuous_uniform":
            return sample_continuous_uniform(p["theta"], rng)
        if self.family == "exponential":
            return sample_exponential(p["lambda"], rng)
        return sample_normal(p["mu"], p["sigma"], rng)

    def mean(self) -> float:
        """Analytic mean of the variate (before any key conversion)."""
        p = self.params
        return {
            "discrete_uniform": lambda: (p["k"] + 1) / 2,
            "poisson": lambda: p["lambda"],
            "geometric": lambda: (1 - p["p"]) / p["p"],
            "continuous_uniform": lambda: p["theta"] / 2,
            "exponential": lambda: 1 / p["lambda"],
            "normal": lambda: p["mu"],
        }[self.family]()

    def variance(self) -> float:
        p = self.params
        return {
            "discrete_uniform": lambda: (p["k"] ** 2 - 1) / 12,
            "poisson": lambda: p["lambda"],
            "geometric": lambda: (1 - p["p"]) / p["p"] ** 2,
            "continuous_uniform": lambda: p["theta"] ** 2 / 12,
            "exponential": lambda: 1 / p["lambda"] ** 2,
            "normal": lambda: p["sigma"] ** 2,
        }[self.family]()


class _NullRng(SplitMix64):
    def next_unit(self) -> float:
        return 0.5


def draw_key(spec: DistributionSpec, mode: str, rng: SplitMix64):
    """One key: an int64-range integer (floored) in ``int`` mode, the raw
    variate as a float in ``real`` mode."""
    value = spec.sample(rng)
    if mode == "int":
        return int(math.floor(value))
    if mode == "real":
        return float(value)
    raise ValueError(f"unknown key mode {mode!r}")


# --- bulk generation -------------------------------------------------------

_FAMILY_CODE = {name: i for i, name in enumerate(FAMILIES)}


@njit(nogil=True, cache=True)
def _nb_unit(st):
    s = st[0] + uint64(GOLDEN_GAMMA)
    st[0] = s
    z = s
    z = (z ^ (z >> uint64(30))) * uint64(_MIX1)
    z = (z ^ (z >> uint64(27))) * uint64(_MIX2)
    z = z ^ (z >> uint64(31))
    return float(z >> uint64(11)) * 1.1102230246251565e-16


@njit(nogil=True, cache=True)
def _nb_fill(code, a, b, n, seed, out):
    st = np.empty(1, np.uint64)
    st[0] = uint64(seed)
    cached = 0.0
    have_cached = False
    limit = math.exp(-a) if code == 1 else 0.0
    log_q = math.log(1.0 - a) if (code == 2 and a < 1.0) else 0.0
    for i in range(n):
        if code == 0:
            v = math.floor(a * _nb_unit(st)) + 1.0
        elif code == 1:
            prod = _nb_unit(st)
            c = 0.0
            while prod >= limit:
                prod *= _nb_unit(st)
                c += 1.0
            v = c
        elif code == 2:
            u = _nb_unit(st)
            v = 0.0 if a == 1.0 else math.floor(math.log(1.0 - u) / log_q)
        elif code == 3:
            v = a * _nb_unit(st)
        elif code == 4:
            v = -math.log(1.0 - _nb_unit(st)) / a
        else:
            if have_cached:
                z = cached
                have_cached = False
            else:
                u1 = 1.0 - _nb_unit(st)
                u2 = _nb_unit(st)
                r = math.sqrt(-2.0 * math.log(u1))
                cached = r * math.sin(2.0 * math.pi * u2)
                have_cached = True
                z = r * math.cos(2.0 * math.pi * u2)
            v = a + b * z
        out[i] = v


def generate_keys(spec: DistributionSpec, n: int, seed: int, mode: str = "int") -> np.ndarray:
    """n keys from a fresh stream seeded with *seed* (same numbers as
    calling ``draw_key`` n times on ``SplitMix64(seed)``)."""
    if mode not in ("int", "real"):
        raise ValueError(f"unknown key mode {mode!r}")
    p = spec.params
    code = _FAMILY_CODE[spec.family]
    a, b = {
        "discrete_uniform": lambda: (p["k"], 0.0),
        "poisson": lambda: (p["lambda"], 0.0),
        "geometric": lambda: (p["p"], 0.0),
        "continuous_uniform": lambda: (p["theta"], 0.0),
        "exponential": lambda: (p["lambda"], 0.0),
        "normal": lambda: (p["mu"], p["sigma"]),
    }[spec.family]()
    out = np.empty(n, np.float64)
    _nb_fill(code, float(a), float(b), n, np.uint64(seed & MASK64), out)
    if mode == "int":
        return np.floor(out).astype(np.int64)
    return out
