# %% [markdown]
# # How good is a partial vertex set?
#
# Stopping after p samples leaves some vertices out. The Hausdorff distance
# between the zonotope and the hull of what was found measures the damage.

# %%
import numpy as np

from zonoenum import SamplerConfig, enumerate_bruteforce, enumerate_vertices, hausdorff_to_subhull
from zonoenum.experiments import ExperimentSpec, random_orthogonal_generator, run_error_trace
from zonoenum.sampler import FixedSamples

# %%
A = random_orthogonal_generator(3, 10, seed=0)
truth = enumerate_bruteforce(A)
res = enumerate_vertices(A, SamplerConfig(seed=1, stop=FixedSamples(10**4)))

for p in [10, 30, 100, 300, 1000, 3000, 10000]:
    Vp = res.vertices_at(p)
    print(p, len(Vp), hausdorff_to_subhull(truth, Vp))

# %% [markdown]
# The same thing over ten trials, in two and three dimensions. Planar
# zonotopes are finished well before 10^4 samples; in three dimensions a few
# vertices with small normal cones tend to remain.

# %%
for n in (2, 3):
    spec = ExperimentSpec("error_trace", m=10, n=n, trials=10,
                          sample_checkpoints=(10, 100, 1000, 10000))
    trace = run_error_trace(spec)
    final = np.array([rows[-1].error for rows in trace.traces])
    print(n, trace.num_vertices, final.mean(), (final == 0).sum())
