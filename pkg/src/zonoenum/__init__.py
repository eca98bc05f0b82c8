"""Randomized enumeration and approximation of zonotope vertices."""
from .bounds import (
    HausdorffBoundResult,
    SampleBoundInput,
    Variant,
    b_orthogonal,
    cone_mass_threshold,
    hausdorff_bound,
    sample_bound,
)
from .core import (
    GeneratorMatrix,
    SignVector,
    Vertex,
    VertexSet,
    canonicalize,
    validate_generators,
    vertex_count_upper_bound,
    vertex_map,
)
from .geometry import (
    adjacency,
    base_diameter,
    diameter_bound,
    hausdorff_to_subhull,
    nearest_point_in_hull,
    sign_feasible,
    simplicial_constant,
    simplicial_constants,
)
from .oracle import enumerate_2d_sweep, enumerate_bruteforce, estimate_vertex_measure
from .sampler import (
    EnumerationResult,
    FixedSamples,
    FullEnumeration,
    NoNewVertexStreak,
    SamplerConfig,
    enumerate_parallel,
    enumerate_vertices,
    gaussian_rng,
    gaussian_vector,
)

__version__ = "0.1.0"
