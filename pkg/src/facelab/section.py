"""Hyperplane sections of a polytope and the induced face-poset bijection.

Slicing a polytope by a hyperplane missing all vertices yields a polytope one
dimension down whose faces correspond exactly to the faces of the base that the
hyperplane cuts.  The slice lattice here is built from that correspondence
(crossed edges become slice vertices), not by fresh facet enumeration, so the
bijection is available by construction and stays exact under recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import (
    Hyperplane,
    QVector,
    parse_rational,
    segment_hyperplane_intersection,
)
from .polytope import Face, FaceLattice, VPolytope, face_id


class SectionError(ValueError):
    """Degenerate or invalid section request."""


def parse_hyperplane(text: str) -> Hyperplane:
    """Parse 'a1,a2,...,ad;c' with rational entries."""
    parts = text.split(";")
    if len(parts) != 2:
        raise SectionError(
            f"malformed hyperplane {text!r}: expected 'a1,...,ad;c'"
        )
    try:
        normal = QVector.of(parse_rational(t) for t in parts[0].split(","))
        offset = parse_rational(parts[1])
        return Hyperplane(normal, offset)
    except ValueError as exc:
        raise SectionError(f"malformed hyperplane {text!r}: {exc}") from None


def cuts_face(h: Hyperplane, f: Face, p: VPolytope) -> bool:
    """True iff f has vertices strictly on both sides of h.

    Given no vertex on h this is equivalent to h meeting f.  A face vertex on
    h makes the query ill-posed and raises.
    """
    has_neg = has_pos = False
    for i in f.vertex_set:
        s = h.side(p.vertices[i])
        if s == 0:
            raise SectionError(f"vertex {i} lies on the hyperplane")
        if s > 0:
            has_pos = True
        else:
            has_neg = True
    return has_neg and has_pos


@dataclass
class SectionMap:
    """A sliced polytope plus the face bijection with its base.

    Slice vertex i is the crossing point of ``crossed_edges[i]``; slice faces
    keep ambient coordinates (they live on the plane), with the slice's
    intrinsic dimension one below the base's.
    """

    base_polytope: VPolytope
    base_lattice: FaceLattice
    plane: Hyperplane
    slice_polytope: VPolytope
    slice_lattice: FaceLattice
    crossed_edges: tuple[Face, ...]
    to_slice: dict[str, str] = field(repr=False)
    to_base: dict[str, str] = field(repr=False)

    def map_face(self, base_face_id: str) -> str:
        """Slice face id for a base face meeting the plane."""
        try:
            return self.to_slice[base_face_id]
        except KeyError:
            raise SectionError(
                f"face {base_face_id!r} does not meet the plane (or is unknown)"
            ) from None

    def lift(self, slice_face_id: str) -> str:
        """The unique base face whose section is the given slice face."""
        try:
            return self.to_base[slice_face_id]
        except KeyError:
            raise SectionError(f"unknown slice face id {slice_face_id!r}") from None


def section(p: VPolytope, lattice: FaceLattice, h: Hyperplane) -> SectionMap:
    """Slice p by h; requires h to miss every vertex and meet the interior."""
    if h.dim != p.ambient_dim:
        raise SectionError(
            f"hyperplane dimension {h.dim} does not match ambient {p.ambient_dim}"
        )
    sides = [h.side(v) for v in p.vertices]
    for i, s in enumerate(sides):
        if s == 0:
            raise SectionError(f"vertex {i} lies on the hyperplane")

    crossed = tuple(
        e
        for e in lattice.faces_of_dim(1)
        if sides[e.vertex_set[0]] * sides[e.vertex_set[1]] < 0
    )
    if not crossed:
        raise SectionError("hyperplane misses the polytope interior")
    slice_points = []
    for e in crossed:
        a, b = e.vertex_set
        slice_points.append(
            segment_hyperplane_intersection(p.vertices[a], p.vertices[b], h)
        )
    edge_to_index = {e.vertex_set: i for i, e in enumerate(crossed)}

    to_slice: dict[str, str] = {}
    slice_sets: list[tuple[int, ...]] = []
    for f in lattice.faces:
        if f.dim < 1:
            continue
        members = set(f.vertex_set)
        if not (
            any(sides[i] < 0 for i in members) and any(sides[i] > 0 for i in members)
        ):
            continue
        cut_edges = tuple(
            idx
            for e, idx in edge_to_index.items()
            if members.issuperset(e)
        )
        if not cut_edges:
            raise SectionError(
                f"face {f.id!r} is cut but contains no crossed edge; "
                "base lattice is inconsistent"
            )
        to_slice[f.id] = face_id(cut_edges)
        slice_sets.append(tuple(sorted(cut_edges)))

    if len(set(slice_sets)) != len(slice_sets):
        raise SectionError("two cut faces produced the same slice face; degenerate cut")

    slice_polytope = VPolytope.from_points(slice_points, validate=False)
    slice_lattice = FaceLattice.from_vertex_sets(slice_points, slice_sets)
    to_base = {slice_id: base_id for base_id, slice_id in to_slice.items()}
    return SectionMap(
        base_polytope=p,
        base_lattice=lattice,
        plane=h,
        slice_polytope=slice_polytope,
        slice_lattice=slice_lattice,
        crossed_edges=crossed,
        to_slice=to_slice,
        to_base=to_base,
    )
