"""Shared, memoized polytope instances so expensive lattices build once."""

from __future__ import annotations

from functools import lru_cache

from facelab.generators import GeneratorSpec, generate
from facelab.polytope import FaceLattice, VPolytope, face_lattice


@lru_cache(maxsize=None)
def polytope(family: str, dim: int, n: int | None = None, seed: int | None = None) -> VPolytope:
    return generate(GeneratorSpec(family=family, dim=dim, n=n, seed=seed))


@lru_cache(maxsize=None)
def lattice_of(family: str, dim: int, n: int | None = None, seed: int | None = None) -> FaceLattice:
    return face_lattice(polytope(family, dim, n, seed))


def instance(
    family: str, dim: int, n: int | None = None, seed: int | None = None
) -> tuple[VPolytope, FaceLattice]:
    return polytope(family, dim, n, seed), lattice_of(family, dim, n, seed)


def random_cutting_plane(p: VPolytope, rng, max_tries: int = 500):
    """A hyperplane that strictly separates the vertex set and avoids every
    vertex, found by seeded rejection sampling.  Deterministic per rng state."""
    from fractions import Fraction

    from facelab.geometry import Hyperplane, QVector

    d = p.ambient_dim
    for _ in range(max_tries):
        normal = QVector.of([Fraction(rng.randint(-5, 5)) for _ in range(d)])
        if normal.is_zero():
            continue
        i, j = rng.sample(range(p.n_vertices), 2)
        mid = (p.vertices[i] + p.vertices[j]).scaled(Fraction(1, 2))
        h = Hyperplane(normal, normal.dot(mid)).canonical()
        sides = {h.side(v) for v in p.vertices}
        if 0 in sides or sides != {-1, 1}:
            continue
        return h
    raise RuntimeError("no cutting plane found; loosen the sampler")
