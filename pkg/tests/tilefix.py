"""Hand-built tile complexes shared by the tile tests."""

from __future__ import annotations

from dataclasses import replace

from booklinks.tiles import BOUNDARY_CORNER, EXTREMAL, HYPERBOLIC, STANDARD, TileComplex, Vertex, choker

H1, H2 = 1, 2
T = {k: 10 + k for k in range(1, 7)}  # t1..t6


def monkey_saddle_pair(sign1: int = 1, sign2: int = 1) -> TileComplex:
    """Two adjacent h-tiles with boundary tiles t1..t6 hanging off them.

    Read counterclockwise from the shared side, h1 sees t5 t6 t1 and h2 sees
    t2 t3 t4.  A +1 rotation leaves h1 with t6 t1 t2 and h2 with t3 t4 t5.
    """
    vertices = {
        H1: Vertex(HYPERBOLIC, sign1, None, STANDARD, (BOUNDARY_CORNER,) * 4),
        H2: Vertex(HYPERBOLIC, sign2, None, STANDARD, (BOUNDARY_CORNER,) * 4),
    }
    edges = {0: (H1, H2)}
    rotation = {}
    for k, t in T.items():
        vertices[t] = Vertex(EXTREMAL, 0, 0 if k in (1, 2, 3) else 1, STANDARD)
        owner = H1 if k in (5, 6, 1) else H2
        edges[k] = (owner, t)
        rotation[t] = ((k, 1),)
    rotation[H1] = ((0, 0), (5, 0), (6, 0), (1, 0))
    rotation[H2] = ((0, 1), (2, 0), (3, 0), (4, 0))
    return TileComplex(vertices, rotation, edges, "other")


def with_degree_two_extremal(d: int = 1) -> TileComplex:
    c = choker(d)
    ext = c.extremal()[0]
    new = max(c.vertices) + 1
    eid = max(c.edges) + 1
    vertices = dict(c.vertices)
    vertices[new] = Vertex(EXTREMAL, 0, 0, STANDARD)
    rotation = dict(c.rotation)
    rotation[ext] = rotation[ext] + ((eid, 0),)
    rotation[new] = ((eid, 1),)
    edges = dict(c.edges)
    edges[eid] = (ext, new)
    return TileComplex(vertices, rotation, edges, "annulus", dict(c.bridge))


def with_unbalanced_region() -> TileComplex:
    """d = 1 choker with both boundary tiles of one h-tile moved to the same side.

    That side then holds three degree-1 vertices and the other side one.
    """
    c = choker(1)
    rotation = dict(c.rotation)
    r = rotation[0]
    rotation[0] = (r[0], r[2], r[1], r[3])
    vertices = dict(c.vertices)
    vertices[5] = replace(vertices[5], boundary=1)
    for k in (2, 3, 4):
        vertices[k] = replace(vertices[k], boundary=0)
    return TileComplex(vertices, rotation, dict(c.edges), "annulus", dict(c.bridge))
