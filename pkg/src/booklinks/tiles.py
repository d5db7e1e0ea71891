"""Tile complexes: the singularity graph of an open book foliation on a surface.

Vertices are hyperbolic singularities (h-tiles and their elliptic variants)
and extremal boundary singularities (boundary tiles).  Edges record tiles
glued along a regular leaf.  Every vertex carries a rotation: the cyclic
(counterclockwise) order of its half-edges, i.e. of the sides of its tile.
A half-edge is ``(edge_id, end)`` with ``end`` in {0, 1}.

Corner ``k`` of a hyperbolic tile sits between sides ``k`` and ``k+1``; it is
either a boundary corner or an elliptic corner ``("elliptic", point, sign)``.

The rotation system is what lets us tell the two sides of the separating
cycle of an annulus apart.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

HYPERBOLIC = "hyperbolic"
EXTREMAL = "extremal"
STANDARD = "standard"
RESOLVABLE = "resolvable"


class ComplexError(ValueError):
    pass


class Corner(NamedTuple):
    kind: str  # "boundary" | "elliptic"
    point: int = 0
    sign: int = 0

    @property
    def is_elliptic(self) -> bool:
        return self.kind == "elliptic"


BOUNDARY_CORNER = Corner("boundary")


@dataclass(frozen=True)
class Vertex:
    kind: str
    sign: int = 0
    boundary: int | None = None
    flavor: str = STANDARD
    corners: tuple[Corner, ...] = ()

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == HYPERBOLIC

    @property
    def is_boundary_tile(self) -> bool:
        return self.kind == EXTREMAL and self.flavor == STANDARD

    def elliptic_corners(self) -> list[int]:
        return [k for k, c in enumerate(self.corners) if c.is_elliptic]


def tile_kind(v: Vertex) -> str:
    """Classify a tile.

    "boundary" and "h" are the two tiles a book-link surface is built from;
    "resolvable" extremal tiles go away by a local perturbation; "e1", "e2",
    "e3" (hyperbolic with 1-3 elliptic corners, the two-corner case with the
    elliptic corners adjacent) go away by stabilization; "e2-opposite" tiles
    make up braided-boundary surfaces and "e4" tiles closed ones.
    """
    if v.kind == EXTREMAL:
        return "boundary" if v.flavor == STANDARD else "resolvable"
    ell = v.elliptic_corners()
    if not ell:
        return "h"
    if len(ell) == 2:
        return "e2-opposite" if (ell[1] - ell[0]) == 2 else "e2"
    return f"e{len(ell)}"


HalfEdge = tuple[int, int]


@dataclass(frozen=True)
class TileComplex:
    vertices: dict = field(default_factory=dict)  # id -> Vertex
    rotation: dict = field(default_factory=dict)  # id -> tuple[HalfEdge, ...]
    edges: dict = field(default_factory=dict)  # edge id -> (vertex at end 0, vertex at end 1)
    surface: str = "other"
    bridge: dict = field(default_factory=dict)  # boundary id -> bridge index (annulus)

    # -- basic queries -------------------------------------------------

    def endpoint(self, he: HalfEdge) -> int:
        return self.edges[he[0]][he[1]]

    def across(self, he: HalfEdge) -> int:
        """Vertex at the other end of a half-edge."""
        return self.edges[he[0]][1 - he[1]]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.across(he) for he in self.rotation[v]]

    def hyperbolic(self) -> list[int]:
        return sorted(v for v, x in self.vertices.items() if x.is_hyperbolic)

    def extremal(self) -> list[int]:
        return sorted(v for v, x in self.vertices.items() if x.kind == EXTREMAL)

    def kind_multiset(self) -> dict:
        out: dict = {}
        for x in self.vertices.values():
            key = (tile_kind(x), x.sign)
            out[key] = out.get(key, 0) + 1
        return out

    def sign_counts(self) -> dict[int, int]:
        out = {1: 0, -1: 0}
        for x in self.vertices.values():
            if x.is_hyperbolic:
                out[x.sign] += 1
        return out

    def is_boundary_h_only(self) -> bool:
        return all(tile_kind(x) in ("boundary", "h") for x in self.vertices.values())

    def adjacency_key(self):
        """Hashable snapshot of the whole structure (used to compare complexes)."""
        return (
            tuple(sorted(self.vertices.items())),
            tuple(sorted(self.rotation.items())),
            tuple(sorted(self.edges.items())),
        )

    # -- copying ------------------------------------------------------

    def _evolve(self, vertices=None, rotation=None, edges=None) -> "TileComplex":
        return TileComplex(
            vertices=dict(self.vertices) if vertices is None else vertices,
            rotation=dict(self.rotation) if rotation is None else rotation,
            edges=dict(self.edges) if edges is None else edges,
            surface=self.surface,
            bridge=dict(self.bridge),
        )


# ---------------------------------------------------------------------------
# cycle and sides


def cycle_structure(c: TileComplex):
    """Return (cycle vertices in order, cycle half-edge pairs per vertex) or None.

    ``pairs[v] = (in_he, out_he)`` are v's half-edges on the cycle, oriented
    along the traversal.  Requires the graph to be connected and unicyclic.
    """
    if not c.vertices:
        return None
    deg = {v: len(r) for v, r in c.rotation.items()}
    alive = set(c.vertices)
    queue = deque(v for v in alive if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for he in c.rotation[v]:
            u = c.across(he)
            if u in alive:
                deg[u] -= 1
                if deg[u] == 1:
                    queue.append(u)
    if not alive:
        return None
    start = min(alive)
    # walk the cycle
    order = []
    pairs = {}
    v = start
    in_he = None
    used_edges = set()
    while True:
        cyc = [he for he in c.rotation[v] if c.across(he) in alive and he[0] not in used_edges]
        if in_he is not None:
            cyc = [he for he in cyc if he != in_he]
        if not cyc:
            return None
        out_he = cyc[0]
        order.append(v)
        used_edges.add(out_he[0])
        nxt = c.across(out_he)
        arrive = (out_he[0], 1 - out_he[1])
        if in_he is not None:
            pairs[v] = (in_he, out_he)
        else:
            first_out = out_he
        v = nxt
        in_he = arrive
        if v == start:
            pairs[start] = (in_he, first_out)
            break
        if len(order) > len(c.vertices):
            return None
    return order, pairs


def sides(c: TileComplex):
    """Assign each off-cycle vertex to side 0 (left of the cycle) or 1 (right).

    Returns (cycle order, pairs, side map, per-cycle-vertex side of each
    non-cycle half-edge) or None when the graph is not unicyclic.
    """
    cs = cycle_structure(c)
    if cs is None:
        return None
    order, pairs = cs
    on_cycle = set(order)
    side: dict[int, int] = {}
    he_side: dict[HalfEdge, int] = {}
    for v in order:
        rot = c.rotation[v]
        in_he, out_he = pairs[v]
        i, j = rot.index(in_he), rot.index(out_he)
        n = len(rot)
        k = (j + 1) % n
        while k != i:
            he_side[rot[k]] = 0
            k = (k + 1) % n
        k = (i + 1) % n
        while k != j:
            he_side[rot[k]] = 1
            k = (k + 1) % n
    for he, s in he_side.items():
        root = c.across(he)
        if root in on_cycle:
            continue
        stack = [root]
        while stack:
            u = stack.pop()
            if u in side or u in on_cycle:
                continue
            side[u] = s
            stack.extend(c.neighbors(u))
    return order, pairs, side, he_side


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ComplexReport:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"error: {self.message}"


def check_complex(c: TileComplex) -> ComplexReport:
    # structural consistency
    seen_he = set()
    for v, rot in c.rotation.items():
        if v not in c.vertices:
            return ComplexReport(False, f"rotation for unknown vertex {v}")
        for he in rot:
            if he[0] not in c.edges or c.endpoint(he) != v:
                return ComplexReport(False, f"half-edge {he} is not attached to vertex {v}")
            if he in seen_he:
                return ComplexReport(False, f"half-edge {he} used twice")
            seen_he.add(he)
    for eid in c.edges:
        for end in (0, 1):
            if (eid, end) not in seen_he:
                return ComplexReport(False, f"edge {eid} end {end} missing from rotations")
    ell_sign: dict[int, int] = {}
    for v, x in c.vertices.items():
        if v not in c.rotation:
            return ComplexReport(False, f"vertex {v} has no rotation")
        deg = len(c.rotation[v])
        if x.is_hyperbolic:
            if x.sign not in (1, -1):
                return ComplexReport(False, f"hyperbolic vertex {v} needs a sign")
            if deg != 4:
                return ComplexReport(False, f"hyperbolic vertex {v} has degree {deg}, expected 4")
            if len(x.corners) != 4:
                return ComplexReport(False, f"hyperbolic vertex {v} needs 4 corners")
        elif x.kind == EXTREMAL:
            want = 1 if x.flavor == STANDARD else 3
            if deg != want:
                return ComplexReport(False, f"extremal vertex {v} has degree {deg}, expected {want}")
        else:
            return ComplexReport(False, f"vertex {v} has unknown kind {x.kind!r}")
        for corner in x.corners:
            if corner.is_elliptic:
                if ell_sign.setdefault(corner.point, corner.sign) != corner.sign:
                    return ComplexReport(False, f"elliptic point {corner.point} has inconsistent signs")
    if c.surface != "annulus" or not c.is_boundary_h_only():
        return ComplexReport(True)

    # annulus with boundary and h-tiles only
    n_v, n_e = len(c.vertices), len(c.edges)
    if not _connected(c):
        return ComplexReport(False, "graph is not connected")
    if n_e - n_v + 1 != 1:
        return ComplexReport(False, f"graph has {n_e - n_v + 1} independent cycles, expected 1")
    sd = sides(c)
    if sd is None:
        return ComplexReport(False, "no separating cycle")
    order, pairs, side, _ = sd
    region_boundary: dict[int, set] = {0: set(), 1: set()}
    region_count = {0: 0, 1: 0}
    for v in c.extremal():
        s = side.get(v)
        if s is None:
            return ComplexReport(False, f"extremal vertex {v} lies on the cycle")
        region_count[s] += 1
        region_boundary[s].add(c.vertices[v].boundary)
    for s in (0, 1):
        if len(region_boundary[s]) > 1:
            return ComplexReport(False, f"region {s} meets more than one boundary component")
    if region_boundary[0] and region_boundary[0] == region_boundary[1]:
        return ComplexReport(False, "both regions meet the same boundary component")
    for s in (0, 1):
        comp = next(iter(region_boundary[s]), None)
        d = c.bridge.get(comp) if comp is not None else None
        if d is None:
            return ComplexReport(False, f"region {s} has no boundary component with a bridge index")
        if region_count[s] != 2 * d:
            return ComplexReport(
                False, f"region {s} has {region_count[s]} degree-1 vertices, expected exactly {2 * d}"
            )
    return ComplexReport(True)


def _connected(c: TileComplex) -> bool:
    if not c.vertices:
        return True
    start = min(c.vertices)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in c.neighbors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(c.vertices)


# ---------------------------------------------------------------------------
# annulus predicates


def annulus_status(c: TileComplex) -> dict:
    """Cycle membership, good tiles and the choker predicate for an annulus."""
    sd = sides(c)
    if sd is None:
        raise ComplexError("complex has no separating cycle")
    order, pairs, side, he_side = sd
    on_cycle = set(order)
    hs = c.hyperbolic()
    off = [h for h in hs if h not in on_cycle]
    good, not_good = [], []
    bad_side = {}
    for h in hs:
        if h not in on_cycle:
            continue
        rest = [he for he in c.rotation[h] if he not in pairs[h]]
        s = [he_side[he] for he in rest]
        boundary_rest = all(c.vertices[c.across(he)].is_boundary_tile for he in rest)
        if len(rest) == 2 and sorted(s) == [0, 1] and boundary_rest:
            good.append(h)
        else:
            not_good.append(h)
            if len(set(s)) == 1:
                bad_side[h] = s[0]
    return {
        "cycle": order,
        "off_cycle": off,
        "good": good,
        "not_good": not_good,
        "not_good_side": bad_side,
        "side": side,
        "choker": not off and not not_good,
    }


def is_choker(c: TileComplex) -> bool:
    return annulus_status(c)["choker"]


# ---------------------------------------------------------------------------
# rewrites


@dataclass
class RewriteTrace:
    steps: list = field(default_factory=list)  # (operation, kwargs)
    stabilizations: int = 0
    hyperbolic_created: dict = field(default_factory=lambda: {1: 0, -1: 0})
    hyperbolic_destroyed: dict = field(default_factory=lambda: {1: 0, -1: 0})
    status: str = ""

    def record(self, op: str, **kwargs) -> None:
        self.steps.append((op, kwargs))

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> str:
        return json.dumps(
            {
                "steps": [{"op": op, "args": args} for op, args in self.steps],
                "stabilizations": self.stabilizations,
                "hyperbolic_created": {str(k): v for k, v in self.hyperbolic_created.items()},
                "hyperbolic_destroyed": {str(k): v for k, v in self.hyperbolic_destroyed.items()},
                "status": self.status,
            },
            indent=1,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "RewriteTrace":
        data = json.loads(text)
        tr = cls(
            steps=[(s["op"], s["args"]) for s in data["steps"]],
            stabilizations=data["stabilizations"],
            status=data.get("status", ""),
        )
        tr.hyperbolic_created = {int(k): v for k, v in data["hyperbolic_created"].items()}
        tr.hyperbolic_destroyed = {int(k): v for k, v in data["hyperbolic_destroyed"].items()}
        return tr


def _shared_edges(c: TileComplex, h1: int, h2: int) -> list[HalfEdge]:
    return [he for he in c.rotation[h1] if c.across(he) == h2 and c.endpoint(he) == h1 and he[0] not in _loops(c, h1)]


def _loops(c: TileComplex, v: int) -> set:
    return {eid for eid, (a, b) in c.edges.items() if a == v and b == v}


def _touches_boundary_tile(c: TileComplex, h: int) -> bool:
    return any(c.vertices[u].is_boundary_tile for u in c.neighbors(h))


def rotate(
    c: TileComplex,
    h1: int,
    h2: int,
    direction: int = 1,
    edge: int | None = None,
    preserve_signs: bool = True,
) -> TileComplex:
    """Merge two adjacent hyperbolic tiles into a monkey saddle and split it the other way.

    The six remaining sides of the pair, in cyclic order ``a1 a2 a3 b1 b2 b3``
    (``a`` at ``h1``, ``b`` at ``h2``, each read counterclockwise from the shared
    side), are re-split one step along: direction +1 gives ``h1`` the sides
    ``a2 a3 b1`` and ``h2`` the sides ``b2 b3 a1``; direction -1 undoes it.

    Allowed when the signs agree, or when one of the pair touches a boundary
    tile: the boundary tile is then used to flip a sign first.  With
    ``preserve_signs`` the sign flip is undone afterwards through whichever of
    the two new tiles touches a boundary tile, so each vertex keeps its sign;
    otherwise both end up with ``h2``'s sign.

    When the pair shares several sides the one with the smallest edge id is
    used unless ``edge`` picks one; rotations never move that edge, so
    rotating back at the same pair undoes the move.
    """
    for h in (h1, h2):
        if h not in c.vertices or not c.vertices[h].is_hyperbolic:
            raise ComplexError(f"vertex {h} is not hyperbolic")
    if h1 == h2:
        raise ComplexError("rotate needs two distinct vertices")
    if direction not in (1, -1):
        raise ComplexError("direction must be +1 or -1")
    s1, s2 = c.vertices[h1].sign, c.vertices[h2].sign
    if s1 != s2 and not (_touches_boundary_tile(c, h1) or _touches_boundary_tile(c, h2)):
        raise ComplexError("opposite signs and no adjacent boundary tile")
    shared = _shared_edges(c, h1, h2)
    if edge is not None:
        shared = [he for he in shared if he[0] == edge]
    if not shared:
        raise ComplexError(f"vertices {h1} and {h2} are not adjacent")
    sh1 = min(shared)
    sh2 = (sh1[0], 1 - sh1[1])
    r1, r2 = c.rotation[h1], c.rotation[h2]
    i1, i2 = r1.index(sh1), r2.index(sh2)
    a = [r1[(i1 + k) % 4] for k in (1, 2, 3)]
    b = [r2[(i2 + k) % 4] for k in (1, 2, 3)]
    if direction == 1:
        new1, new2 = (sh1, a[1], a[2], b[0]), (sh2, b[1], b[2], a[0])
    else:
        new1, new2 = (sh1, b[2], a[0], a[1]), (sh2, a[2], b[0], b[1])
    # keep the shared side where it was so that the inverse restores the tuples exactly
    new1 = new1[-i1:] + new1[:-i1] if i1 else new1
    new2 = new2[-i2:] + new2[:-i2] if i2 else new2
    edges = dict(c.edges)
    for owner, rot in ((h1, new1), (h2, new2)):
        for eid, end in rot:
            ends = list(edges[eid])
            ends[end] = owner
            edges[eid] = tuple(ends)
    rotation = dict(c.rotation)
    rotation[h1], rotation[h2] = new1, new2
    vertices = dict(c.vertices)
    if s1 != s2 and not preserve_signs:
        vertices[h1] = _with_sign(vertices[h1], s2)
    out = c._evolve(vertices=vertices, rotation=rotation, edges=edges)
    if s1 != s2 and preserve_signs:
        if not (_touches_boundary_tile(out, h1) or _touches_boundary_tile(out, h2)):
            raise ComplexError("no boundary tile left to restore the signs")
    return out


def _with_sign(v: Vertex, sign: int) -> Vertex:
    return Vertex(v.kind, sign, v.boundary, v.flavor, v.corners)


def _new_id(d: dict) -> int:
    return max(d, default=-1) + 1


def resolve_extremal(c: TileComplex, v: int, sign: int, new_id: int | None = None) -> TileComplex:
    """Perturb a resolvable extremal tile into a boundary tile plus a hyperbolic tile.

    The resolvable tile's three sides move to the new hyperbolic tile, whose
    fourth side faces the (now standard) boundary tile.  Its elliptic
    corners are inherited.
    """
    x = c.vertices.get(v)
    if x is None or x.kind != EXTREMAL or x.flavor != RESOLVABLE:
        raise ComplexError(f"vertex {v} is not a resolvable extremal singularity")
    if sign not in (1, -1):
        raise ComplexError("sign must be +1 or -1")
    h = _new_id(c.vertices) if new_id is None else new_id
    if h in c.vertices:
        raise ComplexError(f"vertex id {h} already in use")
    eid = _new_id(c.edges)
    rot = c.rotation[v]
    edges = dict(c.edges)
    for e, end in rot:
        ends = list(edges[e])
        ends[end] = h
        edges[e] = tuple(ends)
    edges[eid] = (v, h)
    ell = list(x.corners) + [BOUNDARY_CORNER] * (2 - len(x.corners))
    corners = (BOUNDARY_CORNER, ell[0], ell[1], BOUNDARY_CORNER)
    vertices = dict(c.vertices)
    vertices[v] = Vertex(EXTREMAL, 0, x.boundary, STANDARD, ())
    vertices[h] = Vertex(HYPERBOLIC, sign, None, STANDARD, corners)
    rotation = dict(c.rotation)
    rotation[v] = ((eid, 0),)
    rotation[h] = ((eid, 1),) + tuple(rot)
    return c._evolve(vertices=vertices, rotation=rotation, edges=edges)


def unresolve_extremal(c: TileComplex, v: int) -> TileComplex:
    """Inverse of :func:`resolve_extremal`: absorb the hyperbolic tile next to boundary tile ``v``."""
    x = c.vertices.get(v)
    if x is None or not x.is_boundary_tile:
        raise ComplexError(f"vertex {v} is not a boundary tile")
    (he,) = c.rotation[v]
    h = c.across(he)
    hx = c.vertices[h]
    if not hx.is_hyperbolic:
        raise ComplexError("boundary tile is not attached to a hyperbolic tile")
    hrot = c.rotation[h]
    k = hrot.index((he[0], 1 - he[1]))
    order = [hrot[(k + i) % 4] for i in range(4)]
    corners = [hx.corners[(k + i) % 4] for i in range(4)]
    if corners[0].is_elliptic or corners[3].is_elliptic:
        raise ComplexError("corners next to the boundary tile must be boundary corners")
    rest = order[1:]
    if any(c.across(r) == h for r in rest):
        raise ComplexError("hyperbolic tile has a loop")
    edges = dict(c.edges)
    del edges[he[0]]
    for e, end in rest:
        ends = list(edges[e])
        ends[end] = v
        edges[e] = tuple(ends)
    vertices = dict(c.vertices)
    del vertices[h]
    vertices[v] = Vertex(EXTREMAL, 0, x.boundary, RESOLVABLE, tuple(cc for cc in corners[1:3] if cc.is_elliptic))
    rotation = dict(c.rotation)
    del rotation[h]
    rotation[v] = tuple(rest)
    return c._evolve(vertices=vertices, rotation=rotation, edges=edges), h


def flip_sign(c: TileComplex, h: int) -> TileComplex:
    """Reverse the sign of ``h`` by undoing and redoing the boundary perturbation with the other sign.

    The round trip only changes the sign, so the result is ``c`` with that
    one sign flipped (ids and side order untouched).
    """
    for he in c.rotation[h]:
        u = c.across(he)
        if c.vertices[u].is_boundary_tile:
            try:
                mid, hid = unresolve_extremal(c, u)
            except ComplexError:
                continue
            resolve_extremal(mid, u, -c.vertices[h].sign, new_id=hid)
            vertices = dict(c.vertices)
            vertices[h] = _with_sign(c.vertices[h], -c.vertices[h].sign)
            return c._evolve(vertices=vertices)
    raise ComplexError(f"vertex {h} has no usable boundary tile")


def stabilize_remove(c: TileComplex, e: int, h: int) -> TileComplex:
    """Stabilize the boundary to cancel hyperbolic tile ``h`` against elliptic point ``e``.

    The two sides of ``h`` next to the elliptic corner are glued to each other,
    as are the two opposite sides.  Other tiles with a corner at ``e`` get a
    boundary corner there.
    """
    x = c.vertices.get(h)
    if x is None or not x.is_hyperbolic:
        raise ComplexError(f"vertex {h} is not hyperbolic")
    ks = [k for k, cc in enumerate(x.corners) if cc.is_elliptic and cc.point == e]
    if not ks:
        raise ComplexError(f"vertex {h} has no elliptic corner at point {e}")
    if _loops(c, h):
        raise ComplexError(f"vertex {h} has a loop")
    k = ks[0]
    rot = c.rotation[h]
    s = [rot[(k + i) % 4] for i in range(4)]  # s[0], s[1] are the sides at the corner
    edges = dict(c.edges)
    rotation = dict(c.rotation)
    for first, second in ((s[0], s[1]), (s[2], s[3])):
        far1 = (first[0], 1 - first[1])
        far2 = (second[0], 1 - second[1])
        u1, u2 = c.endpoint(far1), c.endpoint(far2)
        # reuse edge ``first``: its far end stays, its near end moves to u2
        del edges[second[0]]
        ends = [None, None]
        ends[far1[1]] = u1
        ends[first[1]] = u2
        edges[first[0]] = tuple(ends)
        rotation[u2] = tuple(first if he == far2 else he for he in rotation[u2])
    del rotation[h]
    vertices = {}
    for v, vx in c.vertices.items():
        if v == h:
            continue
        if any(cc.is_elliptic and cc.point == e for cc in vx.corners):
            vx = Vertex(
                vx.kind,
                vx.sign,
                vx.boundary,
                vx.flavor,
                tuple(BOUNDARY_CORNER if (cc.is_elliptic and cc.point == e) else cc for cc in vx.corners),
            )
        vertices[v] = vx
    return c._evolve(vertices=vertices, rotation=rotation, edges=edges)


# ---------------------------------------------------------------------------
# elimination of extra tile types


def classify_surface(c: TileComplex) -> str:
    kinds = {tile_kind(x) for x in c.vertices.values()}
    if not c.vertices:
        return "disk"
    if "e4" in kinds:
        return "closed"
    if "e2-opposite" in kinds:
        return "braided"
    if kinds <= {"boundary", "h"}:
        return "book-link"
    return "mixed"


def bad_tile_measure(c: TileComplex) -> tuple[int, int]:
    kinds = [tile_kind(x) for x in c.vertices.values()]
    return (
        sum(1 for k in kinds if k == "resolvable"),
        sum(1 for k in kinds if k in ("e1", "e2", "e3")),
    )


def eliminate_bad_tiles(c: TileComplex, sign: int = 1) -> tuple[TileComplex, RewriteTrace]:
    """Perturb away resolvable extremal tiles and stabilize away removable hyperbolic tiles.

    Resolvable extremal tiles go first, then hyperbolic tiles with one, two
    adjacent or three elliptic corners.  The lexicographic count of such tiles
    drops with every step.  ``trace.status`` reports the outcome:
    "book-link" (boundary and h-tiles only), "closed", "braided", "disk", or
    "stuck" when a removable tile could not be processed.
    """
    trace = RewriteTrace()
    while True:
        before = bad_tile_measure(c)
        if before == (0, 0):
            break
        step = None
        for v in sorted(c.vertices):
            if tile_kind(c.vertices[v]) == "resolvable":
                step = ("resolve_extremal", {"v": v, "sign": sign})
                break
        if step is None:
            for h in sorted(c.vertices):
                x = c.vertices[h]
                if tile_kind(x) in ("e1", "e2", "e3") and not _loops(c, h):
                    e = x.corners[x.elliptic_corners()[0]].point
                    step = ("stabilize_remove", {"e": e, "h": h})
                    break
        if step is None:
            trace.status = "stuck"
            return c, trace
        c = apply_step(c, step[0], step[1], trace)
        if bad_tile_measure(c) >= before:
            raise ComplexError("bad-tile measure did not decrease")
    trace.status = classify_surface(c)
    return c, trace


def apply_step(c: TileComplex, op: str, args: dict, trace: RewriteTrace | None = None) -> TileComplex:
    if op == "rotate":
        out = rotate(c, args["h1"], args["h2"], args.get("direction", 1), args.get("edge"), args.get("preserve_signs", True))
    elif op == "resolve_extremal":
        out = resolve_extremal(c, args["v"], args["sign"], args.get("new_id"))
        if trace is not None:
            trace.hyperbolic_created[args["sign"]] += 1
    elif op == "stabilize_remove":
        sign = c.vertices[args["h"]].sign
        out = stabilize_remove(c, args["e"], args["h"])
        if trace is not None:
            trace.stabilizations += 1
            trace.hyperbolic_destroyed[sign] += 1
    elif op == "flip_sign":
        out = flip_sign(c, args["h"])
    else:
        raise ComplexError(f"unknown rewrite {op!r}")
    if trace is not None:
        trace.record(op, **args)
    return out


def replay(c: TileComplex, trace: RewriteTrace) -> TileComplex:
    for op, args in trace.steps:
        c = apply_step(c, op, args)
    return c


# ---------------------------------------------------------------------------
# annulus normalization


def step_bound(c: TileComplex) -> int:
    """Declared O(V^2) bound on the number of rewrites normalize_annulus may use."""
    return max(1, len(c.vertices)) ** 2


def _measure(c: TileComplex) -> tuple[int, int, int]:
    st = annulus_status(c)
    if st["off_cycle"]:
        return (len(st["off_cycle"]), len(st["not_good"]), _boundary_distance(c, st))
    return (0, len(st["not_good"]), _pair_distance(c, st))


def _boundary_distance(c: TileComplex, st) -> int:
    """Sum over off-cycle h-tiles of the hop distance to the nearest boundary tile
    through off-cycle h-tiles (0 when one is attached)."""
    off = set(st["off_cycle"])
    total = 0
    for v in st["off_cycle"]:
        path = _path_to_boundary(c, v, off)
        total += len(path) - 1 if path else len(c.vertices)
    return total


def _path_to_boundary(c: TileComplex, v: int, allowed: set) -> list[int] | None:
    """Breadth-first search from ``v`` through off-cycle h-tiles to one with a boundary tile.

    Neighbors are explored in increasing id order, so ties go to the smallest id.
    """
    parent = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if _touches_boundary_tile(c, u):
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in sorted(set(c.neighbors(u))):
            if w in allowed and w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def _pair_distance(c: TileComplex, st) -> int:
    """Cycle distance between the closest not-good tiles with their boundary tiles on opposite sides."""
    cyc = st["cycle"]
    pos = {v: i for i, v in enumerate(cyc)}
    n = len(cyc)
    bad = st["not_good_side"]
    best = 0
    zero = [v for v, s in bad.items() if s == 0]
    one = [v for v, s in bad.items() if s == 1]
    if zero and one:
        best = min(min((pos[a] - pos[b]) % n, (pos[b] - pos[a]) % n) for a in zero for b in one)
    return best


def _candidates(c: TileComplex, st) -> list[tuple[int, int, int]]:
    """Rotations in the order the normalization procedure tries them."""
    out: list[tuple[int, int, int]] = []
    cyc = set(st["cycle"])
    if st["off_cycle"]:
        off = set(st["off_cycle"])
        adjacent = [v for v in st["off_cycle"] if any(u in cyc for u in c.neighbors(v))]
        for v in adjacent:
            if _touches_boundary_tile(c, v):
                # move v onto the cycle
                for u in sorted(set(c.neighbors(v))):
                    if u in cyc and c.vertices[u].is_hyperbolic:
                        out += [(u, v, 1), (u, v, -1)]
            else:
                # slide the nearest boundary tile toward v along the branch
                path = _path_to_boundary(c, v, off)
                if path and len(path) > 1:
                    out += [(path[-2], path[-1], 1), (path[-2], path[-1], -1)]
        return out
    # all h-tiles on the cycle: swap not-good pairs together and fix them
    order = st["cycle"]
    n = len(order)
    bad = st["not_good"]
    for v in bad:
        i = order.index(v)
        for nb in (order[(i + 1) % n], order[(i - 1) % n]):
            if nb != v:
                out += [(v, nb, 1), (v, nb, -1), (nb, v, 1), (nb, v, -1)]
    return out


def normalize_annulus(c: TileComplex, max_steps: int | None = None) -> tuple[TileComplex, RewriteTrace]:
    """Rotate h-tiles until every one lies on the separating cycle and is good.

    Each step applies one rotation that strictly lowers the lexicographic
    measure (off-cycle h-tiles, not-good h-tiles, distance term).  The distance
    term is the branch distance from off-cycle tiles to boundary tiles while
    tiles remain off the cycle, then the cycle distance between complementary
    not-good tiles.  Raises :class:`ComplexError` if no rotation makes progress
    or the step bound is exceeded.
    """
    rep = check_complex(c)
    if not rep:
        raise ComplexError(f"invalid input complex: {rep.message}")
    if c.surface != "annulus" or not c.is_boundary_h_only():
        raise ComplexError("normalize_annulus needs an annulus built from boundary and h-tiles")
    bound = step_bound(c) if max_steps is None else max_steps
    trace = RewriteTrace()
    while True:
        st = annulus_status(c)
        if st["choker"]:
            trace.status = "choker"
            return c, trace
        if len(trace) >= bound:
            raise ComplexError(f"step bound {bound} exceeded")
        m = _measure(c)
        chosen = None
        tried = set()
        for cand in _candidates(c, st) + _all_rotations(c):
            if cand in tried:
                continue
            tried.add(cand)
            h1, h2, direction = cand
            try:
                nxt = rotate(c, h1, h2, direction)
            except ComplexError:
                continue
            if not check_complex(nxt):
                continue
            if _measure(nxt) < m:
                chosen = (cand, nxt)
                break
        if chosen is None:
            raise ComplexError(f"no rotation lowers the measure {m}")
        (h1, h2, direction), c = chosen
        trace.record("rotate", h1=h1, h2=h2, direction=direction)


def _all_rotations(c: TileComplex) -> list[tuple[int, int, int]]:
    out = []
    for h1 in c.hyperbolic():
        for h2 in sorted(set(c.neighbors(h1))):
            if h2 != h1 and c.vertices[h2].is_hyperbolic:
                out += [(h1, h2, 1), (h1, h2, -1)]
    return out


# ---------------------------------------------------------------------------
# generators


def choker(d: int, signs: list[int] | None = None) -> TileComplex:
    """The normal form: 2d good h-tiles on a cycle, one boundary tile on each side of each."""
    if d < 1:
        raise ComplexError("bridge index must be at least 1")
    n = 2 * d
    signs = signs or [1] * n
    vertices = {}
    rotation = {}
    edges = {}
    # cycle edges: edge i joins h_i (end 0) to h_{i+1} (end 1)
    for i in range(n):
        edges[i] = (i, (i + 1) % n)
    eid = n
    for i in range(n):
        vertices[i] = Vertex(HYPERBOLIC, signs[i], None, STANDARD, (BOUNDARY_CORNER,) * 4)
        lo, hi = n + 2 * i, n + 2 * i + 1
        vertices[lo] = Vertex(EXTREMAL, 0, 0, STANDARD)
        vertices[hi] = Vertex(EXTREMAL, 0, 1, STANDARD)
        e_lo, e_hi = eid, eid + 1
        eid += 2
        edges[e_lo] = (i, lo)
        edges[e_hi] = (i, hi)
        rotation[lo] = ((e_lo, 1),)
        rotation[hi] = ((e_hi, 1),)
        prev_he = ((i - 1) % n, 1)
        next_he = (i, 0)
        # counterclockwise: incoming cycle side, boundary 1 (right), outgoing, boundary 0 (left)
        rotation[i] = (prev_he, (e_hi, 0), next_he, (e_lo, 0))
    return TileComplex(vertices, rotation, edges, "annulus", {0: d, 1: d})


def generate_annulus(d: int, n_extra: int, seed: int = 0) -> TileComplex:
    """A valid boundary/h annulus complex with ``n_extra`` h-tiles off the cycle.

    Built from the choker by random rotations (deterministic in ``seed``).
    An annulus of bridge index ``d`` has exactly ``2d`` h-tiles, and at least
    two stay on the cycle, so ``n_extra <= 2d - 2``.
    """
    if d < 1:
        raise ComplexError("bridge index must be at least 1")
    if not 0 <= n_extra <= 2 * d - 2:
        raise ComplexError(f"cannot place {n_extra} h-tiles off the cycle when d = {d}")
    rng = random.Random(seed)
    signs = [rng.choice((1, -1)) for _ in range(2 * d)]
    c = choker(d, signs)
    mixing = 4 * d
    # random walk over loop-free rotations; stop once mixed and on target
    for step in range(20000):
        if step >= mixing and len(annulus_status(c)["off_cycle"]) == n_extra:
            return c
        moves = _all_rotations(c)
        rng.shuffle(moves)
        for h1, h2, direction in moves:
            try:
                nxt = rotate(c, h1, h2, direction)
            except ComplexError:
                continue
            if any(a == b for a, b in nxt.edges.values()) or not check_complex(nxt):
                continue
            c = nxt
            break
    raise ComplexError("generator failed to reach the requested configuration")


# ---------------------------------------------------------------------------
# serialization


def to_json(c: TileComplex) -> str:
    verts = []
    for v in sorted(c.vertices):
        x = c.vertices[v]
        rec = {"id": v, "kind": x.kind, "sides": [list(he) for he in c.rotation[v]]}
        if x.is_hyperbolic:
            rec["sign"] = x.sign
            rec["corners"] = [
                {"kind": cc.kind} if not cc.is_elliptic else {"kind": cc.kind, "point": cc.point, "sign": cc.sign}
                for cc in x.corners
            ]
        else:
            rec["boundary"] = x.boundary
            rec["flavor"] = x.flavor
            if x.corners:
                rec["corners"] = [{"kind": cc.kind, "point": cc.point, "sign": cc.sign} for cc in x.corners]
        verts.append(rec)
    data = {
        "surface": c.surface,
        "bridge": {str(k): v for k, v in sorted(c.bridge.items())},
        "vertices": verts,
        "edges": [{"id": e, "ends": list(c.edges[e])} for e in sorted(c.edges)],
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def from_json(text: str) -> TileComplex:
    data = json.loads(text)
    vertices, rotation = {}, {}
    for rec in data["vertices"]:
        corners = tuple(
            Corner(cc["kind"], cc.get("point", 0), cc.get("sign", 0)) for cc in rec.get("corners", [])
        )
        vertices[rec["id"]] = Vertex(
            rec["kind"], rec.get("sign", 0), rec.get("boundary"), rec.get("flavor", STANDARD), corners
        )
        rotation[rec["id"]] = tuple(tuple(he) for he in rec["sides"])
    edges = {rec["id"]: tuple(rec["ends"]) for rec in data["edges"]}
    bridge = {int(k): v for k, v in data.get("bridge", {}).items()}
    return TileComplex(vertices, rotation, edges, data.get("surface", "other"), bridge)


def to_dot(c: TileComplex) -> str:
    """DOT rendering: h-tiles boxed, boundary tiles circled, cycle edges doubled."""
    cycle_edges = set()
    cs = cycle_structure(c) if c.surface == "annulus" else None
    if cs is not None:
        for v, (a, b) in cs[1].items():
            cycle_edges.add(a[0])
            cycle_edges.add(b[0])
    lines = ["graph G {"]
    for v in sorted(c.vertices):
        x = c.vertices[v]
        if x.is_hyperbolic:
            label = f"h{'+' if x.sign > 0 else '-'}"
            kind = tile_kind(x)
            if kind != "h":
                label += f" {kind}"
            lines.append(f'  v{v} [shape=box, label="{label}"];')
        else:
            label = "∂" if x.flavor == STANDARD else "∂*"
            lines.append(f'  v{v} [shape=circle, label="{label}{x.boundary}"];')
    for e in sorted(c.edges):
        a, b = c.edges[e]
        style = ' [color="black:invis:black"]' if e in cycle_edges else ""
        lines.append(f"  v{a} -- v{b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
