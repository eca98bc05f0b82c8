# %% [markdown]
# # Enumerating zonotope vertices by sampling
#
# A zonotope is the image of the cube [-1, 1]^m under an n x m matrix A.
# Each Gaussian direction x picks out the vertex A sign(A^T x), so drawing
# directions until nothing new turns up lists the vertices.

# %%
import numpy as np

from zonoenum import (
    SamplerConfig,
    enumerate_2d_sweep,
    enumerate_bruteforce,
    enumerate_vertices,
    validate_generators,
    vertex_count_upper_bound,
    vertex_map,
)
from zonoenum.experiments import random_orthogonal_generator

# %% [markdown]
# Three generators in the plane give a hexagon.

# %%
A = validate_generators([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
v = vertex_map(A, [1.0, 1.0])
print(v.key, v.point)

res = enumerate_vertices(A, SamplerConfig(seed=0))
print(res.vertices.points())
print("samples used:", res.samples_used)

# %% [markdown]
# For generators in general position the vertex count depends only on m and n.

# %%
for m, n in [(5, 2), (10, 3), (20, 4), (20, 5)]:
    print(m, n, vertex_count_upper_bound(m, n))

# %% [markdown]
# A random matrix with orthonormal rows, checked against both exact methods.

# %%
A = random_orthogonal_generator(2, 8, seed=1)
res = enumerate_vertices(A, SamplerConfig(seed=2))
brute = enumerate_bruteforce(A)
ring = enumerate_2d_sweep(A)
print(len(res.vertices), len(brute), len(ring))
print(res.vertices == brute)

# %% [markdown]
# The trace records how many vertices were known after each batch of samples.

# %%
A = random_orthogonal_generator(3, 10, seed=3)
res = enumerate_vertices(A, SamplerConfig(seed=4, batch_size=2000))
print(res.target, res.samples_used)
for i, count in res.trace[:10]:
    print(i, count)
