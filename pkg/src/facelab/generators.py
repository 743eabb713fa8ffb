"""Polytope constructors: classic families plus seeded random instances.

All generators are deterministic; the random family draws integer points from
Python's Mersenne Twister (`random.Random`) seeded as documented on
`random_polytope`, so runs replicate anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .geometry import QVector, affine_rank, barycenter, point_in_hull
from .polytope import VPolytope


class GeneratorError(ValueError):
    """Unsatisfiable generator request."""


FAMILIES = ("simplex", "cube", "cross", "cyclic", "random", "pyramid", "prism")

# Families whose vertex count is forced by the dimension alone.
_FIXED_SIZE_FAMILIES = ("simplex", "cube", "cross", "pyramid", "prism")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    dim: int
    n: int | None = None
    seed: int | None = None
    bound: int | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GeneratorError(
                f"unknown family {self.family!r}; choose one of {', '.join(FAMILIES)}"
            )
        if self.dim < 1:
            raise GeneratorError("dimension must be >= 1")
        if self.family in _FIXED_SIZE_FAMILIES:
            if self.n is not None:
                raise GeneratorError(f"family {self.family!r} takes no vertex count")
        else:
            if self.n is None:
                raise GeneratorError(f"family {self.family!r} needs a vertex count")
            if self.n < self.dim + 1:
                raise GeneratorError(
                    f"need at least dim+1 = {self.dim + 1} vertices, got {self.n}"
                )
        if self.family != "random" and (self.seed is not None or self.bound is not None):
            raise GeneratorError("seed and bound apply to the random family only")
        if self.family in ("pyramid", "prism") and self.dim < 2:
            raise GeneratorError(f"family {self.family!r} needs dimension >= 2")


def generate(spec: GeneratorSpec) -> VPolytope:
    if spec.family == "simplex":
        return simplex(spec.dim)
    if spec.family == "cube":
        return cube(spec.dim)
    if spec.family == "cross":
        return cross_polytope(spec.dim)
    if spec.family == "cyclic":
        return cyclic(spec.dim, spec.n)
    if spec.family == "pyramid":
        return pyramid(spec.dim)
    if spec.family == "prism":
        return prism(spec.dim)
    seed = spec.seed if spec.seed is not None else 0
    bound = spec.bound if spec.bound is not None else 10
    return random_polytope(spec.dim, spec.n, seed, bound)


def simplex(d: int) -> VPolytope:
    """conv(0, e_1, ..., e_d)."""
    if d < 1:
        raise GeneratorError("dimension must be >= 1")
    points = [QVector.of([0] * d)]
    for i in range(d):
        coords = [0] * d
        coords[i] = 1
        points.append(QVector.of(coords))
    return VPolytope.from_points(points)


def cube(d: int) -> VPolytope:
    """The 0/1 cube; vertex order is lexicographic in the coordinate bits."""
    if d < 1:
        raise GeneratorError("dimension must be >= 1")
    points = [QVector.of(bits) for bits in product((0, 1), repeat=d)]
    return VPolytope.from_points(points)


def cross_polytope(d: int) -> VPolytope:
    """conv(+-e_i); vertex order e_1, -e_1, e_2, -e_2, ..."""
    if d < 1:
        raise GeneratorError("dimension must be >= 1")
    points = []
    for i in range(d):
        for sign in (1, -1):
            coords = [0] * d
            coords[i] = sign
            points.append(QVector.of(coords))
    return VPolytope.from_points(points)


def cyclic(d: int, n: int) -> VPolytope:
    """conv{(t, t^2, ..., t^d) : t = 1..n} on the moment curve."""
    if d < 1:
        raise GeneratorError("dimension must be >= 1")
    if n < d + 1:
        raise GeneratorError(f"cyclic polytope needs n >= d+1 = {d + 1}, got {n}")
    points = [QVector.of([t**e for e in range(1, d + 1)]) for t in range(1, n + 1)]
    return VPolytope.from_points(points)


def _in_general_position(points: list[QVector], d: int) -> bool:
    # No d+1 of the points affinely dependent; implies full rank for n > d.
    return all(affine_rank(sub) == d for sub in combinations(points, d + 1))


def random_polytope(d: int, n: int, seed: int, bound: int = 10) -> VPolytope:
    """n distinct integer points in [-bound, bound]^d, all vertices, general position.

    Each attempt draws a fresh batch from random.Random(seed + attempt * 1000003)
    via randint per coordinate; a batch with coincident points, an affine
    degeneracy, or a non-vertex point is discarded whole and redrawn.  The
    constant stride keeps attempt streams disjoint for neighboring seeds.
    """
    if n < d + 1:
        raise GeneratorError(f"need n >= d+1 = {d + 1} points, got {n}")
    if bound < 1:
        raise GeneratorError("coordinate bound must be >= 1")
    if (2 * bound + 1) ** d < n:
        raise GeneratorError("coordinate box too small for that many distinct points")
    for attempt in range(1000):
        rng = random.Random(seed + attempt * 1_000_003)
        points = [
            QVector.of([rng.randint(-bound, bound) for _ in range(d)]) for _ in range(n)
        ]
        if len(set(points)) != n:
            continue
        if not _in_general_position(points, d):
            continue
        if any(
            point_in_hull(points[:i] + points[i + 1 :], p)
            for i, p in enumerate(points)
        ):
            continue
        return VPolytope.from_points(points, validate=False)
    raise GeneratorError(
        f"no valid sample after 1000 attempts (d={d}, n={n}, bound={bound}); "
        "try a larger bound or fewer points"
    )


def pyramid_over(base: VPolytope) -> VPolytope:
    """Apex over the base's barycenter, one dimension up."""
    if base.dim != base.ambient_dim:
        raise GeneratorError("pyramid base must be full-dimensional")
    points = [QVector.of(list(v.coords) + [0]) for v in base.vertices]
    apex = barycenter(base.vertices)
    points.append(QVector.of(list(apex.coords) + [1]))
    return VPolytope.from_points(points)


def prism_over(base: VPolytope) -> VPolytope:
    """Product of the base with a unit segment, one dimension up."""
    if base.dim != base.ambient_dim:
        raise GeneratorError("prism base must be full-dimensional")
    points = [QVector.of(list(v.coords) + [h]) for h in (0, 1) for v in base.vertices]
    return VPolytope.from_points(points)


def pyramid(d: int) -> VPolytope:
    """Pyramid over the (d-1)-cube."""
    if d < 2:
        raise GeneratorError("pyramid needs dimension >= 2")
    return pyramid_over(cube(d - 1))


def prism(d: int) -> VPolytope:
    """Prism over the (d-1)-simplex."""
    if d < 2:
        raise GeneratorError("prism needs dimension >= 2")
    return prism_over(simplex(d - 1))
