"""Planar diagrams of closures of book-link words, and polynomial invariants.

Layout: the word is drawn in a strip, events left to right, strand position
``p`` at height ``p``; the strip closes up into an annulus around the binding.
With ``include_axis`` the binding is drawn as a small loop around the strands
on the base page, passing under all of them and then back over all of them.

PD convention: ``X(a, b, c, d)`` lists arc labels counterclockwise starting
from the incoming under-arc.  The A-smoothing joins ``(a, b)`` and ``(c, d)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .laurent import LaurentPoly
from .words import BookLinkWord, components, require_valid

DEFAULT_CROSSING_CAP = 24

# corner unit vectors in the strip frame (x = page angle, y = strand height)
_CORNER_VEC = {
    "SE": (1, -1), "NE": (1, 1), "NW": (-1, 1), "SW": (-1, -1),
    "E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1),
}
_CCW_DIAG = ("SE", "NE", "NW", "SW")
_CCW_AXIS = ("E", "N", "W", "S")


class CrossingCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    """PD-style diagram.

    ``signs[k]`` is the sign of crossing ``k`` for the orientation in which
    every component runs through its arc labels in increasing order;
    ``crossing_components[k]`` is (under component, over component).
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    components: tuple[tuple[int, ...], ...] = ()
    free_loops: int = 0
    signs: tuple[int, ...] = ()
    crossing_components: tuple[tuple[int, int], ...] = ()
    axis_component: int | None = None
    free_loop_components: tuple[int, ...] = field(default=(), compare=False)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    def writhe(self) -> int:
        return sum(self.signs)

    def self_writhe(self) -> int:
        return sum(s for s, (a, b) in zip(self.signs, self.crossing_components) if a == b)

    def linking_number(self, c1: int, c2: int) -> int:
        total = sum(
            s for s, cc in zip(self.signs, self.crossing_components) if set(cc) == {c1, c2} and c1 != c2
        )
        if total % 2:
            raise ValueError("odd crossing sum between components")
        return total // 2


# ---------------------------------------------------------------------------
# construction


def to_diagram(w: BookLinkWord, include_axis: bool = False) -> PlanarDiagram:
    require_valid(w)
    cm = components(w)
    n = len(w.events)

    # crossing records: corner -> label, plus per-crossing metadata
    corner_labels: list[dict[str, int]] = []
    ccw: list[tuple[str, ...]] = []
    under_corners: list[frozenset] = []
    under_in: list[str | None] = []
    dirs: list[dict[str, tuple[str, str]]] = []  # 'over'/'under' -> (in, out)
    owner: list[dict[str, int]] = []
    event_crossing: dict[int, int] = {}

    def new_crossing(order, under):
        corner_labels.append({})
        ccw.append(order)
        under_corners.append(frozenset(under))
        under_in.append(None)
        dirs.append({})
        owner.append({})
        return len(corner_labels) - 1

    for j, e in enumerate(w.events):
        if e.is_crossing:
            under = ("SW", "NE") if e.kind == "s" else ("NW", "SE")
            event_crossing[j] = new_crossing(_CCW_DIAG, under)
    axis_low: dict[int, int] = {}
    axis_high: dict[int, int] = {}
    if include_axis:
        for p in range(1, w.base + 1):
            axis_low[p] = new_crossing(_CCW_AXIS, ("S", "N"))  # axis under the strand
        for p in range(1, w.base + 1):
            axis_high[p] = new_crossing(_CCW_AXIS, ("W", "E"))  # axis over the strand

    # passages per component, in traversal order: (crossing, in_corner, out_corner)
    comp_passages: dict[int, list[tuple[int, str, str]]] = {c: [] for c in range(cm.n_components)}
    comp_slots: dict[int, list] = {c: [] for c in range(cm.n_components)}
    seen = set()
    for (t, p), c in sorted(cm.slot_component.items()):
        if c in seen:
            continue
        seen.add(c)
        direction = cm.slot_direction[(t, p)]
        comp_slots[c] = _trace(w, t, p, direction)

    for c, path in comp_slots.items():
        passages = comp_passages[c]
        for t, p, d in path:
            # the slot's own stretch: binding loop sits on interval 0
            if include_axis and t == 0 and w.base:
                lo, hi = axis_low[p], axis_high[p]
                if d > 0:
                    passages.append((lo, "W", "E"))
                    passages.append((hi, "W", "E"))
                else:
                    passages.append((hi, "E", "W"))
                    passages.append((lo, "E", "W"))
            # step to the next slot through an event
            if n == 0:
                continue
            j = t if d > 0 else (t - 1) % n
            e = w.events[j]
            if e.is_crossing and p in (e.pos, e.pos + 1):
                xid = event_crossing[j]
                if d > 0:
                    cin = "SW" if p == e.pos else "NW"
                    cout = "NE" if p == e.pos else "SE"
                else:
                    cin = "NE" if p == e.pos + 1 else "SE"
                    cout = "SW" if p == e.pos + 1 else "NW"
                passages.append((xid, cin, cout))

    axis_passages: list[tuple[int, str, str]] = []
    if include_axis:
        for p in range(1, w.base + 1):
            axis_passages.append((axis_low[p], "S", "N"))
        for p in range(w.base, 0, -1):
            axis_passages.append((axis_high[p], "N", "S"))

    all_passages = [comp_passages[c] for c in range(cm.n_components)]
    comp_ids = list(range(cm.n_components))
    axis_id = None
    if include_axis:
        axis_id = cm.n_components
        all_passages.append(axis_passages)
        comp_ids.append(axis_id)

    label = 1
    pd_components = []
    free = 0
    free_ids = []
    for cid, passages in zip(comp_ids, all_passages):
        k = len(passages)
        if k == 0:
            free += 1
            free_ids.append(cid)
            continue
        labels = list(range(label, label + k))
        label += k
        pd_components.append(tuple(labels))
        for m, (xid, cin, cout) in enumerate(passages):
            corner_labels[xid][cout] = labels[m]
            corner_labels[xid][cin] = labels[m - 1]
            role = "under" if cin in under_corners[xid] else "over"
            dirs[xid][role] = (cin, cout)
            owner[xid][role] = cid
            if role == "under":
                under_in[xid] = cin

    crossings = []
    signs = []
    cross_comp = []
    for xid in range(len(corner_labels)):
        order = ccw[xid]
        start = order.index(under_in[xid])
        rot = order[start:] + order[:start]
        crossings.append(tuple(corner_labels[xid][corner] for corner in rot))
        oi, oo = dirs[xid]["over"]
        ui, uo = dirs[xid]["under"]
        ov = _vec(oi, oo)
        uv = _vec(ui, uo)
        cross = ov[0] * uv[1] - ov[1] * uv[0]
        signs.append(1 if cross > 0 else -1)
        cross_comp.append((owner[xid]["under"], owner[xid]["over"]))

    # component indices in crossing_components refer to the link's component ids;
    # remap to positions in ``components`` for PD-level consumers
    nonfree = [cid for cid in comp_ids if cid not in free_ids]
    remap = {cid: k for k, cid in enumerate(nonfree)}
    return PlanarDiagram(
        crossings=tuple(crossings),
        components=tuple(pd_components),
        free_loops=free,
        signs=tuple(signs),
        crossing_components=tuple((remap[a], remap[b]) for a, b in cross_comp),
        axis_component=remap.get(axis_id) if axis_id is not None else None,
        free_loop_components=tuple(free_ids),
    )


def _vec(cin: str, cout: str) -> tuple[int, int]:
    a, b = _CORNER_VEC[cin], _CORNER_VEC[cout]
    return b[0] - a[0], b[1] - a[1]


def _trace(w, t, p, direction):
    from .words import trace_component

    return trace_component(w, t, p, direction)


# ---------------------------------------------------------------------------
# PD text


def format_pd(d: PlanarDiagram) -> str:
    xs = ", ".join("X(" + ",".join(str(v) for v in x) + ")" for x in d.crossings)
    comps = " ".join("(" + " ".join(str(v) for v in c) + ")" for c in d.components)
    axis = "none" if d.axis_component is None else str(d.axis_component)
    signs = " ".join("+" if s > 0 else "-" for s in d.signs)
    return f"PD: {xs}\ncomponents: {comps}\nsigns: {signs}\nfree_loops: {d.free_loops}\naxis: {axis}\n"


def parse_pd(text: str) -> PlanarDiagram:
    fields = {}
    for line in text.splitlines():
        if ":" in line:
            key, val = line.split(":", 1)
            fields[key.strip()] = val.strip()
    crossings = tuple(
        tuple(int(v) for v in m.group(1).split(",")) for m in re.finditer(r"X\(([^)]*)\)", fields.get("PD", ""))
    )
    comps = tuple(
        tuple(int(v) for v in m.group(1).split()) for m in re.finditer(r"\(([^)]*)\)", fields.get("components", ""))
    )
    signs = tuple(1 if s == "+" else -1 for s in fields.get("signs", "").split())
    axis = fields.get("axis", "none")
    comp_of = {lab: k for k, c in enumerate(comps) for lab in c}
    # (under component, over component); b is an end of the over-strand
    cross_comp = tuple((comp_of[x[0]], comp_of[x[1]]) for x in crossings)
    return PlanarDiagram(
        crossings=crossings,
        components=comps,
        free_loops=int(fields.get("free_loops", "0")),
        signs=signs,
        crossing_components=cross_comp,
        axis_component=None if axis == "none" else int(axis),
    )


# ---------------------------------------------------------------------------
# bracket by sequential contraction of connectivity states


def _loop_value(loops: int) -> LaurentPoly:
    d = LaurentPoly({2: -1, -2: -1})
    return d ** loops


def kauffman_bracket(diagram: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """Kauffman bracket in ``A`` with the unknot normalized to 1."""
    n = diagram.n_crossings
    if n > cap:
        raise CrossingCapExceeded(f"{n} crossings exceeds the cap of {cap}")
    if n == 0:
        if diagram.free_loops == 0:
            raise ValueError("bracket of the empty diagram is undefined")
        return _loop_value(diagram.free_loops - 1)

    # state: (frozenset of open (x, y) pairs, closed loops) -> {A-exponent: coeff}
    states: dict[tuple[frozenset, int], dict[int, int]] = {(frozenset(), 0): {0: 1}}
    for a, b, c, dd in diagram.crossings:
        nxt: dict[tuple[frozenset, int], dict[int, int]] = {}
        for (match, loops), poly in states.items():
            for shift, pairs in ((1, ((a, b), (c, dd))), (-1, ((a, dd), (b, c)))):
                m = dict(_unpack(match))
                extra = 0
                for x, y in pairs:
                    extra += _join(m, x, y)
                key = (_pack(m), loops + extra)
                bucket = nxt.setdefault(key, {})
                for e, coef in poly.items():
                    bucket[e + shift] = bucket.get(e + shift, 0) + coef
        states = nxt

    total = LaurentPoly()
    for (match, loops), poly in states.items():
        if match:
            raise ValueError("diagram has unmatched arc labels")
        total = total + LaurentPoly(poly) * _loop_value(loops - 1)
    return total * _loop_value(diagram.free_loops)


def _unpack(match: frozenset) -> list[tuple[int, int]]:
    out = []
    for x, y in match:
        out.append((x, y))
        out.append((y, x))
    return out


def _pack(m: dict[int, int]) -> frozenset:
    return frozenset((x, y) for x, y in m.items() if x < y)


def _join(m: dict[int, int], x: int, y: int) -> int:
    """Add a smoothing strand joining arc ends ``x`` and ``y``; return loops closed."""
    if x == y:
        return 1
    px = m.pop(x, None)
    py = m.pop(y, None)
    if px is None and py is None:
        m[x] = y
        m[y] = x
        return 0
    if px is not None and py is None:
        m.pop(px, None)
        m[px] = y
        m[y] = px
        return 0
    if px is None and py is not None:
        m.pop(py, None)
        m[py] = x
        m[x] = py
        return 0
    if px == y:
        return 1
    m.pop(px, None)
    m.pop(py, None)
    m[px] = py
    m[py] = px
    return 0


# ---------------------------------------------------------------------------
# Jones


def normalized_bracket(diagram: PlanarDiagram, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """(-A^3)^(-w) <D> with ``w`` the self-writhe (crossings of a component with itself).

    Crossings between distinct components are left out of the writhe, so the
    result does not depend on how the components are oriented.
    """
    br = kauffman_bracket(diagram, cap)
    w = diagram.self_writhe()
    return br * (LaurentPoly({3: -1}) ** (-w))


def bracket_to_jones(p: LaurentPoly) -> LaurentPoly:
    """Substitute A = t^(-1/4).

    The result is in ``t`` when every exponent of ``p`` is divisible by 4 and
    otherwise in ``q = t^(1/2)``.
    """
    if all(e % 4 == 0 for e in p.terms):
        return LaurentPoly({-e // 4: c for e, c in p.terms.items()}, "t")
    if any(e % 2 for e in p.terms):
        raise ValueError("bracket exponents have mixed parity")
    return LaurentPoly({-e // 2: c for e, c in p.terms.items()}, "q")


def jones(w: BookLinkWord, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """Jones polynomial of the closure (orientation-independent normalization)."""
    return bracket_to_jones(normalized_bracket(to_diagram(w), cap))


def jones_with_axis(w: BookLinkWord, cap: int = DEFAULT_CROSSING_CAP) -> LaurentPoly:
    """Jones polynomial of the closure together with the binding."""
    return bracket_to_jones(normalized_bracket(to_diagram(w, include_axis=True), cap))


def linking_with_axis(w: BookLinkWord) -> int:
    """Signed strand count through the base page, components oriented as in ``components``."""
    return sum(components(w).winding)


def signed_profile(w: BookLinkWord) -> tuple[int, ...]:
    """Signed strand count on every regular interval; constant for valid words."""
    cm = components(w)
    counts = w.counts()
    n = max(len(w.events), 1)
    return tuple(
        sum(cm.slot_direction[(t, p)] for p in range(1, counts[t] + 1)) for t in range(n)
    )
