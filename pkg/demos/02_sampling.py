# coding: utf-8

# # Seeded variates
#
# All randomness comes from splitmix64. A scalar route (`SplitMix64` plus
# `DistributionSpec.sample`) and a compiled bulk route (`generate_keys`) read the
# same stream, so they yield the same keys.

import numpy as np

from newsort_lab import DistributionSpec, SplitMix64, draw_key, generate_keys

rng = SplitMix64(0)
print(hex(rng.next_u64()), hex(rng.next_u64()))

# Six families, with their analytic moments next to 10^5-draw estimates.

specs = [
    DistributionSpec("discrete_uniform", {"k": 10}),
    DistributionSpec("poisson", {"lambda": 3.5}),
    DistributionSpec("geometric", {"p": 0.3}),
    DistributionSpec("continuous_uniform", {"theta": 25}),
    DistributionSpec("exponential", {"lambda": 2}),
    DistributionSpec("normal", {"mu": 50, "variance": 100}),
]
for spec in specs:
    x = generate_keys(spec, 100_000, 7, "real")
    print(f"{spec.family:18s} mean {x.mean():8.4f} vs {spec.mean():8.4f}"
          f"   var {x.var():9.4f} vs {spec.variance():9.4f}")

# Integer keys are floored. Wide continuous laws give few ties; narrow ones give many.

for theta in (5, 50):
    keys = generate_keys(DistributionSpec("continuous_uniform", {"theta": theta}), 20, 3)
    print(theta, keys)

# Scalar and bulk routes agree draw for draw.

spec = DistributionSpec("poisson", {"lambda": 2})
rng = SplitMix64(11)
scalar = [draw_key(spec, "int", rng) for _ in range(10)]
print(scalar, generate_keys(spec, 10, 11).tolist())
