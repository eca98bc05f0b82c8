# %% [markdown]
# # Cone mass, sharpness and sample bounds
#
# A vertex is found with probability equal to the Gaussian mass of its normal
# cone. Sharp vertices (large simplicial constant) have wide cones, so they
# are found early; flat ones are both rare and cheap to miss.

# %%
import numpy as np

from zonoenum import (
    SampleBoundInput,
    Variant,
    b_orthogonal,
    enumerate_bruteforce,
    estimate_vertex_measure,
    hausdorff_bound,
    sample_bound,
    simplicial_constants,
)
from zonoenum.experiments import random_orthogonal_generator, spearman

# %%
A = random_orthogonal_generator(2, 5, seed=0)
full = enumerate_bruteforce(A)
est = estimate_vertex_measure(A, full, 10**6, seed=1)
alpha = simplicial_constants(full)

for k in full.keys():
    print(k, round(est.estimates[k], 4), round(alpha[k], 4))
print("rank correlation:", spearman([est.estimates[k] for k in full.keys()],
                                    [alpha[k] for k in full.keys()]))

# %% [markdown]
# Samples sufficient to find every vertex whose simplicial constant exceeds
# delta, with failure probability at most epsilon. Two forms of the threshold
# are available; they agree on p in the plane.

# %%
delta = 0.5 * min(alpha.values())
for variant in Variant:
    inp = SampleBoundInput(0.2, delta, b_orthogonal(5), 2, len(full), variant)
    print(variant.value, sample_bound(inp))

# %% [markdown]
# The Hausdorff bound after dropping the flattest pair of vertices.

# %%
flattest = min(alpha, key=alpha.get)
V = full.without([flattest])
res = hausdorff_bound(full, V, 2 * alpha[flattest], 0.01, alpha)
print(res)
