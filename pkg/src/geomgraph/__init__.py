"""Exact computational-geometry solvers built on classical graph reductions.

Everything here computes with `fractions.Fraction`; floating point appears
only when rendering figures.  The solvers reduce geometric questions to
matchings, independent sets, circulations, and parametric shortest paths:

- :mod:`geomgraph.gallery` -- vertex guards via triangulation 3-coloring and
  quadrilateralization 4-coloring,
- :mod:`geomgraph.rectpart` -- minimum rectangle partition of orthogonal
  polygons via a matching over good diagonals,
- :mod:`geomgraph.clustering` -- minimum-diameter clusters via independent
  sets in half-lune conflict graphs,
- :mod:`geomgraph.bends` -- bend-minimal orthogonal region layouts via
  min-cost circulation,
- :mod:`geomgraph.strips` -- single triangle strips via perfect matching in
  the dual graph,
- :mod:`geomgraph.tiling` -- angle optimization of zonotopal tilings via a
  minimum-ratio cycle threshold,
- :mod:`geomgraph.stars` -- optimal star embeddings of finite metrics via a
  parametric negative-cycle threshold.
"""

from __future__ import annotations

from .bends import PlaneMap, min_bend_assignment
from .clustering import max_cluster_given_d2, min_diameter_k_cluster
from .errors import InputError
from .gallery import fisk_guards, orthogonal_guards, verify_guard_certificate
from .geometry import Point, Polygon, Segment
from .rectpart import build_partition, min_rectangle_count
from .stars import DistanceMatrix, optimal_star_embedding
from .strips import TriMesh, single_strip
from .tiling import Tiling, optimize_angles

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "InputError",
    "Point",
    "Segment",
    "Polygon",
    "fisk_guards",
    "orthogonal_guards",
    "verify_guard_certificate",
    "build_partition",
    "min_rectangle_count",
    "max_cluster_given_d2",
    "min_diameter_k_cluster",
    "PlaneMap",
    "min_bend_assignment",
    "TriMesh",
    "single_strip",
    "Tiling",
    "optimize_angles",
    "DistanceMatrix",
    "optimal_star_embedding",
]
