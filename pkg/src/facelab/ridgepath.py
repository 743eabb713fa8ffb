"""Ridge paths between k-faces that avoid a blocked set of k-faces.

The solver realizes an inductive construction: pick a blocked face R, find a
hyperplane through relative-interior points of the endpoints that misses R and
every vertex, slice, solve the smaller problem in the slice, and lift the
answer back.  Each recursion level drops both k and the blocked budget by one,
so a blocked set of size at most k always bottoms out in a plain graph search.
A standalone verifier re-checks any claimed path against the lattice alone.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from fractions import Fraction

from .geometry import Hyperplane, QVector, solve_nonnegative
from .polytope import (
    EMPTY_FACE_ID,
    Face,
    FaceLattice,
    PolytopeError,
    VPolytope,
    parse_face_id,
)
from .section import section

DEFAULT_BUDGET = 10_000

# Coefficient ranges tried in order while sampling normals; the budget is
# split evenly across them.
ESCALATION = (3, 10, 100)


class RidgePathError(ValueError):
    """Unsolvable request, malformed inputs, or an exhausted search budget."""


def _id_key(fid: str) -> tuple[int, ...]:
    return parse_face_id(fid)


@dataclass(frozen=True)
class BlockedSet:
    """The k-faces a path must avoid; at most k of them."""

    k: int
    face_ids: frozenset[str]

    def __post_init__(self) -> None:
        if len(self.face_ids) > self.k:
            raise RidgePathError(
                f"blocked set of size {len(self.face_ids)} exceeds the budget k={self.k}"
            )

    @classmethod
    def of(cls, k: int, ids: Iterable[str]) -> BlockedSet:
        return cls(k, frozenset(ids))


@dataclass(frozen=True)
class RidgePath:
    """Face ids G_1..G_l plus the (k-1)-face ids where neighbors meet."""

    faces: tuple[str, ...]
    ridges: tuple[str, ...]


@dataclass(frozen=True)
class RidgePathResult:
    path: RidgePath
    verified: bool | None
    depth: int
    hyperplanes: tuple[Hyperplane, ...]


def _feasible_orthogonal_normal(
    p: VPolytope, bf: QVector, w: QVector, r: Face, sign: int
) -> QVector | None:
    """A normal a with a.w = 0 putting every vertex of r strictly on one side.

    Exact feasibility solve: split a into nonnegative parts and require
    sign * a.(v - bf) >= 1 per vertex of r (scale-invariant normalization of
    strictness), which a phase-1 simplex settles deterministically.
    """
    d = p.ambient_dim
    r_points = p.points_of(r.vertex_set)
    n_slack = len(r_points)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    if not w.is_zero():
        rows.append(list(w.coords) + [-c for c in w.coords] + [Fraction(0)] * n_slack)
        rhs.append(Fraction(0))
    for idx, v in enumerate(r_points):
        diff = v - bf
        slack = [Fraction(0)] * n_slack
        slack[idx] = Fraction(-1)
        rows.append(
            [sign * c for c in diff.coords]
            + [-sign * c for c in diff.coords]
            + slack
        )
        rhs.append(Fraction(1))
    x = solve_nonnegative(rows, rhs)
    if x is None:
        return None
    a = QVector.of([x[j] - x[d + j] for j in range(d)])
    return None if a.is_zero() else a


def _clear_grazed_vertices(
    p: VPolytope, bf: QVector, w: QVector, a: QVector, rng: random.Random
) -> QVector | None:
    """Nudge a within the w-orthogonal space until no vertex lies on the plane.

    The step size is chosen strictly below every sign-flip threshold, so all
    existing strict side assignments survive the nudge exactly.
    """
    diffs = [v - bf for v in p.vertices]
    values = [a.dot(diff) for diff in diffs]
    offenders = [i for i, val in enumerate(values) if val == 0]
    if not offenders:
        return a
    ww = w.dot(w)
    for _ in range(200):
        u0 = QVector.of([Fraction(rng.randint(-9, 9)) for _ in range(p.ambient_dim)])
        u = u0 if ww == 0 else u0.scaled(ww) - w.scaled(u0.dot(w))
        if u.is_zero():
            continue
        pair = [u.dot(diff) for diff in diffs]
        if any(pair[i] == 0 for i in offenders):
            continue
        step = min(
            abs(val) / (2 * (abs(q) + 1))
            for val, q in zip(values, pair)
            if val != 0
        )
        return a + u.scaled(step)
    return None


def search_cutting_hyperplane(
    p: VPolytope,
    lattice: FaceLattice,
    f: Face,
    g: Face,
    r: Face,
    seed: int,
    budget: int = DEFAULT_BUDGET,
) -> tuple[Hyperplane, int]:
    """A hyperplane through the barycenters of f and g, missing r and all vertices.

    Samples integer normals orthogonal to the barycenter difference (so both
    barycenters lie on the plane by construction) and accepts on exact sign
    tests.  Valid normals form a full-dimensional open cone, but the cone can
    be extremely thin when vertex coordinates are badly skewed (moment-curve
    instances), so once sampling exhausts its budget a targeted phase solves
    for a feasible normal exactly and nudges it off any vertex it grazes.
    Returns the plane and the number of candidates tried.
    """
    d = p.ambient_dim
    k = f.dim
    if len({f.id, g.id, r.id}) != 3:
        raise RidgePathError("f, g, r must be three distinct faces")
    if not (g.dim == k and r.dim == k):
        raise RidgePathError("f, g, r must share one dimension")
    if not (1 <= k <= lattice.dim - 1):
        raise RidgePathError(f"face dimension {k} out of range [1, {lattice.dim - 1}]")
    bf = p.face_barycenter(f)
    bg = p.face_barycenter(g)
    w = bg - bf
    ww = w.dot(w)
    rng = random.Random(seed)
    attempts = 0
    sample_budget = budget - min(2, budget)
    per_phase = sample_budget // len(ESCALATION)
    for phase, bound in enumerate(ESCALATION):
        phase_budget = per_phase if phase < len(ESCALATION) - 1 else sample_budget - attempts
        for _ in range(phase_budget):
            attempts += 1
            u = QVector.of([rng.randint(-bound, bound) for _ in range(d)])
            a = u if ww == 0 else u.scaled(ww) - w.scaled(u.dot(w))
            if a.is_zero():
                continue
            h = Hyperplane(a, a.dot(bf)).canonical()
            sides = [h.side(v) for v in p.vertices]
            if any(s == 0 for s in sides):
                continue
            r_sides = {sides[i] for i in r.vertex_set}
            if len(r_sides) != 1:
                continue
            return h, attempts
    for sign in (1, -1):
        if attempts >= budget:
            break
        attempts += 1
        a = _feasible_orthogonal_normal(p, bf, w, r, sign)
        if a is None:
            continue
        a = _clear_grazed_vertices(p, bf, w, a, rng)
        if a is None:
            continue
        h = Hyperplane(a, a.dot(bf)).canonical()
        sides = [h.side(v) for v in p.vertices]
        if any(s == 0 for s in sides):
            continue
        if len({sides[i] for i in r.vertex_set}) != 1:
            continue
        return h, attempts
    raise RidgePathError(
        f"no cutting hyperplane found for f={f.id}, g={g.id}, r={r.id}: "
        f"{budget} samples plus the exact feasibility solve all failed; "
        "either the line through the two barycenters meets r or this is a bug"
    )


def find_cutting_hyperplane(
    p: VPolytope,
    lattice: FaceLattice,
    f: Face,
    g: Face,
    r: Face,
    seed: int,
    budget: int = DEFAULT_BUDGET,
) -> Hyperplane:
    return search_cutting_hyperplane(p, lattice, f, g, r, seed, budget)[0]


def _ridge_ok(ridge: Face, blocked_faces: list[Face]) -> bool:
    return not any(
        set(ridge.vertex_set) <= set(b.vertex_set) for b in blocked_faces
    )


def _bfs_ridge_path(
    lattice: FaceLattice, k: int, blocked_ids: frozenset[str], f_id: str, g_id: str
) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """Breadth-first search on the pruned ridge graph of k-faces.

    Nodes are k-faces outside the blocked set; two are adjacent when their
    lattice meet has dimension k-1 and lies inside no blocked face.
    """
    blocked_faces = [lattice.face(b) for b in blocked_ids]
    nodes = sorted(
        (f.id for f in lattice.faces_of_dim(k) if f.id not in blocked_ids),
        key=_id_key,
    )
    parent: dict[str, tuple[str, str] | None] = {f_id: None}
    queue = deque([f_id])
    while queue:
        current = queue.popleft()
        if current == g_id:
            faces = [current]
            ridges = []
            link = parent[current]
            while link is not None:
                prev, ridge = link
                faces.append(prev)
                ridges.append(ridge)
                link = parent[prev]
            return tuple(reversed(faces)), tuple(reversed(ridges))
        cur_face = lattice.face(current)
        for nid in nodes:
            if nid in parent:
                continue
            ridge = lattice.meet(cur_face, lattice.face(nid))
            if ridge.dim != k - 1:
                continue
            if not _ridge_ok(ridge, blocked_faces):
                continue
            parent[nid] = (current, ridge.id)
            queue.append(nid)
    return None


@dataclass(frozen=True)
class _Solution:
    faces: tuple[str, ...]
    ridges: tuple[str, ...]
    depth: int
    hyperplanes: tuple[Hyperplane, ...]


def _solve(
    p: VPolytope,
    lattice: FaceLattice,
    k: int,
    blocked_ids: frozenset[str],
    f_id: str,
    g_id: str,
    seed: int,
    budget: int,
) -> _Solution:
    if f_id == g_id:
        return _Solution((f_id,), (), 0, ())
    if k == 0:
        # Two distinct vertices; their meet is the empty face, which is the
        # (k-1)-ridge this degenerate level admits.
        return _Solution((f_id, g_id), (EMPTY_FACE_ID,), 0, ())
    if k == 1 or not blocked_ids:
        found = _bfs_ridge_path(lattice, k, blocked_ids, f_id, g_id)
        if found is None:
            raise RidgePathError(
                f"ridge graph of {k}-faces is disconnected after removing "
                f"{sorted(blocked_ids)}; this contradicts the connectivity bound"
            )
        return _Solution(found[0], found[1], 0, ())

    r_id = min(blocked_ids, key=_id_key)
    h, _ = search_cutting_hyperplane(
        p, lattice, lattice.face(f_id), lattice.face(g_id), lattice.face(r_id), seed, budget
    )
    smap = section(p, lattice, h)
    f_slice = smap.map_face(f_id)
    g_slice = smap.map_face(g_id)
    blocked_slice = frozenset(
        smap.to_slice[b] for b in blocked_ids - {r_id} if b in smap.to_slice
    )
    if f_slice == g_slice or f_slice in blocked_slice or g_slice in blocked_slice:
        raise RidgePathError("section collapsed distinct faces; slicing is degenerate")
    if len(blocked_slice) > k - 1:
        raise RidgePathError("blocked set failed to shrink under slicing")
    sub = _solve(
        smap.slice_polytope,
        smap.slice_lattice,
        k - 1,
        blocked_slice,
        f_slice,
        g_slice,
        seed + 1,
        budget,
    )
    return _Solution(
        tuple(smap.lift(x) for x in sub.faces),
        tuple(smap.lift(x) for x in sub.ridges),
        sub.depth + 1,
        (h,) + sub.hyperplanes,
    )


def _validate_request(
    lattice: FaceLattice, k: int, b: BlockedSet, f_id: str, g_id: str
) -> None:
    if not (0 <= k <= lattice.dim - 1):
        raise RidgePathError(f"k={k} out of range [0, {lattice.dim - 1}]")
    if b.k != k:
        raise RidgePathError(f"blocked set is for k={b.k}, request is for k={k}")
    for fid in sorted(b.face_ids, key=_id_key) + [f_id, g_id]:
        try:
            face = lattice.face(fid)
        except PolytopeError as exc:
            raise RidgePathError(str(exc)) from None
        if face.dim != k:
            raise RidgePathError(f"face {fid!r} has dimension {face.dim}, expected {k}")
    if f_id in b.face_ids or g_id in b.face_ids:
        raise RidgePathError("endpoints may not be blocked")


def find_ridge_path(
    p: VPolytope,
    lattice: FaceLattice,
    k: int,
    b: BlockedSet,
    f_id: str,
    g_id: str,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> RidgePath:
    """A path of k-faces from f to g through (k-1)-ridges avoiding b."""
    _validate_request(lattice, k, b, f_id, g_id)
    solution = _solve(p, lattice, k, b.face_ids, f_id, g_id, seed, budget)
    return RidgePath(solution.faces, solution.ridges)


def solve_ridge_path(
    p: VPolytope,
    lattice: FaceLattice,
    k: int,
    b: BlockedSet,
    f_id: str,
    g_id: str,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    verify: bool = False,
) -> RidgePathResult:
    """find_ridge_path plus recursion metadata and an optional verifier pass."""
    _validate_request(lattice, k, b, f_id, g_id)
    solution = _solve(p, lattice, k, b.face_ids, f_id, g_id, seed, budget)
    path = RidgePath(solution.faces, solution.ridges)
    verified = (
        verify_ridge_path(lattice, k, b, path, f_id, g_id) if verify else None
    )
    return RidgePathResult(path, verified, solution.depth, solution.hyperplanes)


def verify_ridge_path(
    lattice: FaceLattice,
    k: int,
    b: BlockedSet,
    path: RidgePath,
    f_id: str,
    g_id: str,
) -> bool:
    """Independent lattice-only check of a claimed path; False on any defect."""
    try:
        blocked_faces = [lattice.face(fid) for fid in b.face_ids]
        if b.k != k or len(b.face_ids) > k:
            return False
        if any(face.dim != k for face in blocked_faces):
            return False
        if not path.faces or len(path.ridges) != len(path.faces) - 1:
            return False
        if path.faces[0] != f_id or path.faces[-1] != g_id:
            return False
        faces = [lattice.face(fid) for fid in path.faces]
        if any(face.dim != k for face in faces):
            return False
        if any(fid in b.face_ids for fid in path.faces):
            return False
        for left, right, ridge_id in zip(faces, faces[1:], path.ridges):
            if left.id == right.id:
                return False
            ridge = lattice.face(ridge_id)
            if ridge.dim != k - 1:
                return False
            if lattice.meet(left, right).id != ridge.id:
                return False
            if any(
                set(ridge.vertex_set) <= set(bl.vertex_set) for bl in blocked_faces
            ):
                return False
        return True
    except (PolytopeError, RidgePathError):
        return False
