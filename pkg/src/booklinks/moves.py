"""Word-level moves on book-link words.

Isotopy moves (book-link type preserved):
    Commute, BraidRelation, CrossingCancel, CriticalSlide, CyclicRotate
Type-changing moves (link type preserved):
    Stabilize / Destabilize   -- braid-style, through the binding; base count +-1
    ZigzagInsert / ZigzagCancel -- a cancelling cup/cap pair on one strand; bridge +-1
    AxisPass                  -- a cup/cap pair pushed across the binding; bridge -1 (or +1)

Every move is a :class:`Move` value.  ``apply_move`` checks applicability and
raises :class:`MoveError` when the move does not apply to the given word.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

from .words import CAP, CUP, BookLinkWord, Event, WordError, crossing, require_valid


class MoveKind(str, Enum):
    COMMUTE = "Commute"
    BRAID_RELATION = "BraidRelation"
    CROSSING_CANCEL = "CrossingCancel"
    CRITICAL_SLIDE = "CriticalSlide"
    CYCLIC_ROTATE = "CyclicRotate"
    STABILIZE = "Stabilize"
    DESTABILIZE = "Destabilize"
    ZIGZAG_INSERT = "ZigzagInsert"
    ZIGZAG_CANCEL = "ZigzagCancel"
    AXIS_PASS = "AxisPass"

    def __str__(self) -> str:
        return self.value


ISOTOPY_KINDS = frozenset(
    {
        MoveKind.COMMUTE,
        MoveKind.BRAID_RELATION,
        MoveKind.CROSSING_CANCEL,
        MoveKind.CRITICAL_SLIDE,
        MoveKind.CYCLIC_ROTATE,
    }
)
STABILIZATION_KINDS = frozenset({MoveKind.STABILIZE, MoveKind.DESTABILIZE})
ZIGZAG_KINDS = frozenset({MoveKind.ZIGZAG_INSERT, MoveKind.ZIGZAG_CANCEL})
ALL_KINDS = frozenset(MoveKind)


class MoveError(ValueError):
    """The move is not applicable at the requested location."""


class Move(NamedTuple):
    """A located move.

    ``index`` is an event index (0-based) or, for insertions, a gap index
    ``0..len(events)`` (the regular interval before event ``index``).
    ``variant`` selects between sub-forms: "remove"/"insert" for
    CrossingCancel and CriticalSlide, "up"/"down" for zigzags,
    "inner-cancel"/"outer-cancel"/"inner-create"/"outer-create" for AxisPass.
    For CyclicRotate ``sign`` is the shift (+1 first event to the end).
    """

    kind: MoveKind
    index: int = 0
    pos: int = 0
    sign: int = 0
    variant: str = ""
    index2: int = 0

    def __str__(self) -> str:
        bits = [str(self.kind), f"i={self.index}"]
        if self.pos:
            bits.append(f"p={self.pos}")
        if self.sign:
            bits.append(f"sign={'+' if self.sign > 0 else '-'}")
        if self.variant:
            bits.append(self.variant)
        if self.index2:
            bits.append(f"j={self.index2}")
        return "(" + " ".join(bits) + ")"


def _replace(w: BookLinkWord, start: int, stop: int, new: list[Event] | tuple[Event, ...], base: int | None = None):
    evs = w.events[:start] + tuple(new) + w.events[stop:]
    return BookLinkWord(w.base if base is None else base, evs)


# ---------------------------------------------------------------------------
# Commute


def commute_pair(e1: Event, e2: Event) -> tuple[Event, Event] | None:
    """Swap two adjacent events whose strand supports are disjoint.

    ``e2`` is given in the coordinates after ``e1``; the result is
    ``(e2', e1')`` with ``e2'`` before ``e1'``.  Returns None when the
    supports overlap.
    """
    p1, in1, out1 = e1.span()
    p2, in2, out2 = e2.span()
    if p2 + in2 <= p1:
        return Event(e2.kind, p2), Event(e1.kind, p1 + out2 - in2)
    if p2 >= p1 + out1:
        return Event(e2.kind, p2 - (out1 - in1)), Event(e1.kind, p1)
    return None


def _commute(w: BookLinkWord, j: int) -> BookLinkWord:
    if not 0 <= j < len(w.events) - 1:
        raise MoveError("Commute needs two adjacent events")
    swapped = commute_pair(w.events[j], w.events[j + 1])
    if swapped is None:
        raise MoveError("Commute: supports overlap")
    return _replace(w, j, j + 2, swapped)


# ---------------------------------------------------------------------------
# BraidRelation


def _braid_relation(w: BookLinkWord, j: int) -> BookLinkWord:
    if not 0 <= j < len(w.events) - 2:
        raise MoveError("BraidRelation needs three events")
    a, b, c = w.events[j : j + 3]
    if not (a.is_crossing and b.is_crossing and c.is_crossing):
        raise MoveError("BraidRelation needs crossings")
    if not (a.kind == b.kind == c.kind and a.pos == c.pos and abs(a.pos - b.pos) == 1):
        raise MoveError("BraidRelation pattern s_i s_j s_i with |i-j| = 1 not found")
    k = a.kind
    return _replace(w, j, j + 3, [Event(k, b.pos), Event(k, a.pos), Event(k, b.pos)])


# ---------------------------------------------------------------------------
# CrossingCancel


def _crossing_cancel(w: BookLinkWord, m: Move) -> BookLinkWord:
    if m.variant in ("", "remove"):
        j = m.index
        if not 0 <= j < len(w.events) - 1:
            raise MoveError("CrossingCancel needs two events")
        a, b = w.events[j], w.events[j + 1]
        if not (a.is_crossing and b.is_crossing and a.pos == b.pos and a.sign == -b.sign):
            raise MoveError("CrossingCancel: not an inverse pair")
        return _replace(w, j, j + 2, [])
    if m.variant == "insert":
        t = m.index
        counts = w.counts()
        if not 0 <= t <= len(w.events):
            raise MoveError("gap out of range")
        if not 1 <= m.pos <= counts[t] - 1 or m.sign not in (1, -1):
            raise MoveError("CrossingCancel insert: bad position or sign")
        return _replace(w, t, t, [crossing(m.pos, m.sign), crossing(m.pos, -m.sign)])
    raise MoveError(f"unknown variant {m.variant!r}")


# ---------------------------------------------------------------------------
# CriticalSlide: a crossing of the two strands of a cup/cap is absorbed by it


def _critical_slide(w: BookLinkWord, m: Move) -> BookLinkWord:
    j = m.index
    n = len(w.events)
    if m.variant in ("", "remove"):
        if not 0 <= j < n - 1:
            raise MoveError("CriticalSlide needs two events")
        a, b = w.events[j], w.events[j + 1]
        if a.is_crossing and b.kind == CAP and a.pos == b.pos:
            return _replace(w, j, j + 1, [])
        if a.kind == CUP and b.is_crossing and a.pos == b.pos:
            return _replace(w, j + 1, j + 2, [])
        raise MoveError("CriticalSlide: no twist next to a cup/cap")
    if m.variant == "insert":
        if not 0 <= j < n or m.sign not in (1, -1):
            raise MoveError("CriticalSlide insert: bad event or sign")
        e = w.events[j]
        if e.kind == CAP:
            return _replace(w, j, j, [crossing(e.pos, m.sign)])
        if e.kind == CUP:
            return _replace(w, j + 1, j + 1, [crossing(e.pos, m.sign)])
        raise MoveError("CriticalSlide insert needs a cup or cap")
    if m.variant == "pass-remove":
        new = _pass_remove(w.events[j : j + 3]) if 0 <= j <= n - 3 else None
        if new is None:
            raise MoveError("CriticalSlide pass: no strand crossing both arms of a cup/cap")
        return _replace(w, j, j + 3, [new])
    if m.variant == "pass-insert":
        if not 0 <= j < n or m.sign not in (1, -1) or m.pos not in (1, -1):
            raise MoveError("CriticalSlide pass insert: bad event, sign or direction")
        counts = w.counts()
        new = _pass_insert(w.events[j], counts[j], m.pos, m.sign)
        if new is None:
            raise MoveError("CriticalSlide pass insert: no room on that side")
        return _replace(w, j, j + 1, new)
    raise MoveError(f"unknown variant {m.variant!r}")


# A strand crossing both arms of a cup or cap with crossings of one sign can be
# slid past it:  u_i s_{i+1} s_i = u_{i+1},  u_{i+1} s_i s_{i+1} = u_i,
# s_i s_{i+1} n_i = n_{i+1},  s_{i+1} s_i n_{i+1} = n_i  (any single sign).


def _pass_remove(evs) -> Event | None:
    a, b, c = evs
    if a.kind == CUP and b.is_crossing and c.is_crossing and b.kind == c.kind:
        i = a.pos
        if b.pos == i + 1 and c.pos == i:
            return Event(CUP, i + 1)
        if i >= 2 and b.pos == i - 1 and c.pos == i:
            return Event(CUP, i - 1)
    if c.kind == CAP and a.is_crossing and b.is_crossing and a.kind == b.kind:
        i = c.pos
        if a.pos == i and b.pos == i + 1:
            return Event(CAP, i + 1)
        if i >= 2 and a.pos == i and b.pos == i - 1:
            return Event(CAP, i - 1)
    return None


def _pass_insert(e: Event, count: int, direction: int, sign: int) -> list[Event] | None:
    """Expand a cup/cap into the three-event form; ``direction`` moves the critical point by one."""
    p = e.pos
    if e.kind == CUP:
        if direction < 0 and p >= 2:
            return [Event(CUP, p - 1), crossing(p, sign), crossing(p - 1, sign)]
        if direction > 0 and p <= count:
            return [Event(CUP, p + 1), crossing(p, sign), crossing(p + 1, sign)]
        return None
    if e.kind == CAP:
        if direction < 0 and p >= 2:
            return [crossing(p - 1, sign), crossing(p, sign), Event(CAP, p - 1)]
        if direction > 0 and p <= count - 3:
            return [crossing(p + 1, sign), crossing(p, sign), Event(CAP, p + 1)]
        return None
    return None


# ---------------------------------------------------------------------------
# CyclicRotate


def rotate(w: BookLinkWord, shift: int) -> BookLinkWord:
    """Re-base the word ``shift`` events later (negative shifts go earlier)."""
    n = len(w.events)
    if n == 0:
        return w
    r = shift % n
    counts = w.counts()
    return BookLinkWord(counts[r], w.events[r:] + w.events[:r])


def _cyclic_rotate(w: BookLinkWord, m: Move) -> BookLinkWord:
    if not w.events:
        raise MoveError("CyclicRotate needs at least one event")
    if m.sign not in (1, -1):
        raise MoveError("CyclicRotate shift must be +1 or -1")
    return rotate(w, m.sign)


# ---------------------------------------------------------------------------
# Stabilize / Destabilize


def _stabilize(w: BookLinkWord, m: Move) -> BookLinkWord:
    """Add a new topmost strand spliced to the strand below it at gap ``index``."""
    t = m.index
    counts = w.counts()
    if not 0 <= t <= len(w.events):
        raise MoveError("gap out of range")
    if counts[t] < 1 or m.sign not in (1, -1):
        raise MoveError("Stabilize needs a strand at the chosen interval and a sign")
    return _replace(w, t, t, [crossing(counts[t], m.sign)], base=w.base + 1)


def _destabilizable(w: BookLinkWord, j: int, counts: list[int]) -> bool:
    e = w.events[j]
    if not e.is_crossing or e.pos != counts[j] - 1:
        return False
    for k, f in enumerate(w.events):
        if k == j:
            continue
        c = counts[k]
        if f.is_crossing or f.kind == CAP:
            if f.pos + 1 >= c:
                return False
        elif f.pos > c:
            return False
    return True


def _destabilize(w: BookLinkWord, m: Move) -> BookLinkWord:
    j = m.index
    if not 0 <= j < len(w.events):
        raise MoveError("event index out of range")
    if not _destabilizable(w, j, w.counts()):
        raise MoveError("Destabilize: topmost strand is not a free stabilization loop")
    return _replace(w, j, j + 1, [], base=w.base - 1)


# ---------------------------------------------------------------------------
# Zigzags


def zigzag_events(p: int, variant: str) -> list[Event]:
    if variant == "up":
        return [Event(CUP, p + 1), Event(CAP, p)]
    if variant == "down":
        return [Event(CUP, p), Event(CAP, p + 1)]
    raise MoveError(f"unknown zigzag variant {variant!r}")


def _zigzag_insert(w: BookLinkWord, m: Move) -> BookLinkWord:
    t = m.index
    counts = w.counts()
    if not 0 <= t <= len(w.events):
        raise MoveError("gap out of range")
    if not 1 <= m.pos <= counts[t]:
        raise MoveError("ZigzagInsert needs an existing strand")
    return _replace(w, t, t, zigzag_events(m.pos, m.variant or "up"))


def _is_zigzag(a: Event, b: Event) -> bool:
    return a.kind == CUP and b.kind == CAP and abs(a.pos - b.pos) == 1


def _zigzag_cancel(w: BookLinkWord, m: Move) -> BookLinkWord:
    j = m.index
    if not 0 <= j < len(w.events) - 1 or not _is_zigzag(w.events[j], w.events[j + 1]):
        raise MoveError("ZigzagCancel: no cup/cap zigzag at this index")
    return _replace(w, j, j + 2, [])


# ---------------------------------------------------------------------------
# AxisPass: a cup and cap bounding an innermost (or outermost) strand segment
# with nothing between it and the binding cancel through the binding.


def _touches_bottom(e: Event) -> bool:
    return e.pos == 1


def _touches_top(e: Event, count: int) -> bool:
    if e.kind == CUP:
        return e.pos > count
    return e.pos + 1 >= count


def _axis_pass(w: BookLinkWord, m: Move) -> BookLinkWord:
    n = len(w.events)
    counts = w.counts()
    if m.variant in ("inner-cancel", "outer-cancel"):
        a, b = m.index, m.index2
        if not 0 <= a < b < n:
            raise MoveError("AxisPass cancel needs a cup before a cap")
        ea, eb = w.events[a], w.events[b]
        if ea.kind != CUP or eb.kind != CAP:
            raise MoveError("AxisPass cancel needs a cup before a cap")
        inside = range(a + 1, b)
        if m.variant == "inner-cancel":
            if ea.pos != 1 or eb.pos != 1:
                raise MoveError("inner AxisPass needs u1 ... n1")
            if any(_touches_bottom(w.events[k]) for k in inside):
                raise MoveError("inner AxisPass: innermost strand is not free")
            new = (
                [Event(e.kind, e.pos + 1) for e in w.events[:a]]
                + [Event(w.events[k].kind, w.events[k].pos - 1) for k in inside]
                + [Event(e.kind, e.pos + 1) for e in w.events[b + 1 :]]
            )
            return BookLinkWord(w.base + 1, tuple(new))
        if ea.pos != counts[a] + 1 or eb.pos != counts[b] - 1:
            raise MoveError("outer AxisPass needs a topmost cup and cap")
        if any(_touches_top(w.events[k], counts[k]) for k in inside):
            raise MoveError("outer AxisPass: outermost strand is not free")
        return BookLinkWord(w.base + 1, w.events[:a] + w.events[a + 1 : b] + w.events[b + 1 :])

    if m.variant in ("inner-create", "outer-create"):
        a, b = m.index, m.index2
        if not 0 <= a <= b <= n:
            raise MoveError("AxisPass create needs gaps a <= b")
        if w.base < 1:
            raise MoveError("AxisPass create needs a strand through the base page")
        outside = list(range(0, a)) + list(range(b, n))
        if m.variant == "inner-create":
            if any(_touches_bottom(w.events[k]) for k in outside):
                raise MoveError("inner AxisPass: innermost strand is not free outside the range")
            new = (
                [Event(e.kind, e.pos - 1) for e in w.events[:a]]
                + [Event(CUP, 1)]
                + [Event(e.kind, e.pos + 1) for e in w.events[a:b]]
                + [Event(CAP, 1)]
                + [Event(e.kind, e.pos - 1) for e in w.events[b:]]
            )
            return BookLinkWord(w.base - 1, tuple(new))
        if any(_touches_top(w.events[k], counts[k]) for k in outside):
            raise MoveError("outer AxisPass: outermost strand is not free outside the range")
        new = (
            list(w.events[:a])
            + [Event(CUP, counts[a])]
            + list(w.events[a:b])
            + [Event(CAP, counts[b])]
            + list(w.events[b:])
        )
        return BookLinkWord(w.base - 1, tuple(new))
    raise MoveError(f"unknown AxisPass variant {m.variant!r}")


# ---------------------------------------------------------------------------


def apply_move(w: BookLinkWord, m: Move) -> BookLinkWord:
    try:
        require_valid(w)
    except WordError as exc:
        raise MoveError(str(exc)) from None
    kind = MoveKind(m.kind)
    if kind is MoveKind.COMMUTE:
        return _commute(w, m.index)
    if kind is MoveKind.BRAID_RELATION:
        return _braid_relation(w, m.index)
    if kind is MoveKind.CROSSING_CANCEL:
        return _crossing_cancel(w, m)
    if kind is MoveKind.CRITICAL_SLIDE:
        return _critical_slide(w, m)
    if kind is MoveKind.CYCLIC_ROTATE:
        return _cyclic_rotate(w, m)
    if kind is MoveKind.STABILIZE:
        return _stabilize(w, m)
    if kind is MoveKind.DESTABILIZE:
        return _destabilize(w, m)
    if kind is MoveKind.ZIGZAG_INSERT:
        return _zigzag_insert(w, m)
    if kind is MoveKind.ZIGZAG_CANCEL:
        return _zigzag_cancel(w, m)
    return _axis_pass(w, m)


def apply_path(w: BookLinkWord, path) -> BookLinkWord:
    for m in path:
        w = apply_move(w, m)
    return w


def enumerate_moves(
    w: BookLinkWord,
    kinds=ALL_KINDS,
    insertions: bool = True,
    passes: bool = False,
) -> list[Move]:
    """All applicable moves of the requested kinds, in a fixed order.

    With ``insertions=False`` the moves that lengthen the word without
    changing the strand profile (crossing-pair and twist insertion) are left
    out; zigzag insertion and stabilization are governed by ``kinds``.
    ``passes`` keeps the strand-past-critical-point expansions even then.
    """
    require_valid(w)
    kinds = frozenset(MoveKind(k) for k in kinds)
    ev = w.events
    n = len(ev)
    counts = w.counts()
    out: list[Move] = []

    if MoveKind.COMMUTE in kinds:
        for j in range(n - 1):
            if commute_pair(ev[j], ev[j + 1]) is not None:
                out.append(Move(MoveKind.COMMUTE, j))
    if MoveKind.BRAID_RELATION in kinds:
        for j in range(n - 2):
            a, b, c = ev[j : j + 3]
            if (
                a.is_crossing
                and a.kind == b.kind == c.kind
                and a.pos == c.pos
                and abs(a.pos - b.pos) == 1
            ):
                out.append(Move(MoveKind.BRAID_RELATION, j))
    if MoveKind.CROSSING_CANCEL in kinds:
        for j in range(n - 1):
            a, b = ev[j], ev[j + 1]
            if a.is_crossing and b.is_crossing and a.pos == b.pos and a.sign == -b.sign:
                out.append(Move(MoveKind.CROSSING_CANCEL, j, variant="remove"))
        if insertions:
            for t in range(n + 1):
                for i in range(1, counts[t]):
                    for s in (1, -1):
                        out.append(Move(MoveKind.CROSSING_CANCEL, t, i, s, "insert"))
    if MoveKind.CRITICAL_SLIDE in kinds:
        for j in range(n - 1):
            a, b = ev[j], ev[j + 1]
            if (a.is_crossing and b.kind == CAP and a.pos == b.pos) or (
                a.kind == CUP and b.is_crossing and a.pos == b.pos
            ):
                out.append(Move(MoveKind.CRITICAL_SLIDE, j, variant="remove"))
        for j in range(n - 2):
            if _pass_remove(ev[j : j + 3]) is not None:
                out.append(Move(MoveKind.CRITICAL_SLIDE, j, variant="pass-remove"))
        if insertions:
            for j, e in enumerate(ev):
                if e.kind in (CUP, CAP):
                    for s in (1, -1):
                        out.append(Move(MoveKind.CRITICAL_SLIDE, j, sign=s, variant="insert"))
        if insertions or passes:
            for j, e in enumerate(ev):
                if e.kind in (CUP, CAP):
                    for d in (-1, 1):
                        if _pass_insert(e, counts[j], d, 1) is not None:
                            for s in (1, -1):
                                out.append(Move(MoveKind.CRITICAL_SLIDE, j, d, s, "pass-insert"))
    if MoveKind.CYCLIC_ROTATE in kinds and n > 1:
        out.append(Move(MoveKind.CYCLIC_ROTATE, sign=1))
        out.append(Move(MoveKind.CYCLIC_ROTATE, sign=-1))
    if MoveKind.STABILIZE in kinds:
        for t in range(n + 1):
            if counts[t] >= 1:
                for s in (1, -1):
                    out.append(Move(MoveKind.STABILIZE, t, sign=s))
    if MoveKind.DESTABILIZE in kinds:
        for j in range(n):
            if _destabilizable(w, j, counts):
                out.append(Move(MoveKind.DESTABILIZE, j))
    if MoveKind.ZIGZAG_INSERT in kinds:
        for t in range(n + 1):
            for p in range(1, counts[t] + 1):
                for v in ("up", "down"):
                    out.append(Move(MoveKind.ZIGZAG_INSERT, t, p, variant=v))
    if MoveKind.ZIGZAG_CANCEL in kinds:
        for j in range(n - 1):
            if _is_zigzag(ev[j], ev[j + 1]):
                out.append(Move(MoveKind.ZIGZAG_CANCEL, j))
    if MoveKind.AXIS_PASS in kinds:
        out.extend(_axis_pass_moves(w, counts))
    return out


def _axis_pass_moves(w: BookLinkWord, counts: list[int]) -> list[Move]:
    ev = w.events
    n = len(ev)
    out = []
    for a, ea in enumerate(ev):
        if ea.kind != CUP:
            continue
        if ea.pos == 1:
            for b in range(a + 1, n):
                eb = ev[b]
                if eb.kind == CAP and eb.pos == 1:
                    out.append(Move(MoveKind.AXIS_PASS, a, variant="inner-cancel", index2=b))
                    break
                if _touches_bottom(eb):
                    break
        if ea.pos == counts[a] + 1:
            for b in range(a + 1, n):
                eb = ev[b]
                if eb.kind == CAP and eb.pos == counts[b] - 1:
                    out.append(Move(MoveKind.AXIS_PASS, a, variant="outer-cancel", index2=b))
                    break
                if _touches_top(eb, counts[b]):
                    break
    if w.base >= 1:
        # free stretches of the innermost / outermost strand around the base page
        lo = 0
        while lo < n and not _touches_bottom(ev[lo]):
            lo += 1
        hi = n
        while hi > lo and not _touches_bottom(ev[hi - 1]):
            hi -= 1
        if lo == n:
            hi = 0
        for a in range(0, lo + 1):
            for b in range(max(a, hi), n + 1):
                out.append(Move(MoveKind.AXIS_PASS, a, variant="inner-create", index2=b))
        lo = 0
        while lo < n and not _touches_top(ev[lo], counts[lo]):
            lo += 1
        hi = n
        while hi > lo and not _touches_top(ev[hi - 1], counts[hi - 1]):
            hi -= 1
        if lo == n:
            hi = 0
        for a in range(0, lo + 1):
            for b in range(max(a, hi), n + 1):
                out.append(Move(MoveKind.AXIS_PASS, a, variant="outer-create", index2=b))
    return out


# ---------------------------------------------------------------------------
# canonical form and bounded equivalence search


def _event_key(w: BookLinkWord) -> tuple:
    return (w.base, tuple(e.sort_key() for e in w.events))


def canonical_path(w: BookLinkWord) -> tuple[list[Move], BookLinkWord]:
    """Moves taking ``w`` to its canonical form, and that form.

    Inverse crossing pairs are cancelled greedily (cyclically, via one
    rotation when the pair straddles the base page), then the word is rotated
    to its least representative, comparing base count and then events by
    kind (s < S < u < n) and position.
    """
    require_valid(w)
    path: list[Move] = []
    while True:
        ev = w.events
        n = len(ev)
        j = next(
            (
                j
                for j in range(n - 1)
                if ev[j].is_crossing and ev[j + 1].is_crossing and ev[j].pos == ev[j + 1].pos and ev[j].sign == -ev[j + 1].sign
            ),
            None,
        )
        if j is not None:
            m = Move(MoveKind.CROSSING_CANCEL, j, variant="remove")
        elif n >= 2 and ev[-1].is_crossing and ev[0].is_crossing and ev[-1].pos == ev[0].pos and ev[-1].sign == -ev[0].sign:
            m = Move(MoveKind.CYCLIC_ROTATE, sign=1)
        else:
            break
        path.append(m)
        w = apply_move(w, m)
    n = len(w.events)
    if n > 1:
        best = min(range(n), key=lambda r: (_event_key(rotate(w, r)), min(r, n - r)))
        if best:
            step = 1 if best <= n - best else -1
            for _ in range(best if step == 1 else n - best):
                path.append(Move(MoveKind.CYCLIC_ROTATE, sign=step))
            w = rotate(w, best)
    return path, w


def canonical_form(w: BookLinkWord) -> BookLinkWord:
    return canonical_path(w)[1]


def inverse_path(w: BookLinkWord, path: list[Move]) -> list[Move]:
    """Moves undoing ``path`` (which must start at ``w``); only removals and rotations are supported."""
    inv: list[Move] = []
    cur = w
    for m in path:
        if m.kind is MoveKind.CYCLIC_ROTATE:
            inv.append(Move(MoveKind.CYCLIC_ROTATE, sign=-m.sign))
        elif m.kind is MoveKind.CROSSING_CANCEL and m.variant in ("", "remove"):
            e = cur.events[m.index]
            inv.append(Move(MoveKind.CROSSING_CANCEL, m.index, e.pos, e.sign, "insert"))
        elif m.kind is MoveKind.ZIGZAG_INSERT:
            inv.append(Move(MoveKind.ZIGZAG_CANCEL, m.index))
        elif m.kind is MoveKind.STABILIZE:
            inv.append(Move(MoveKind.DESTABILIZE, m.index))
        else:
            raise MoveError(f"no recorded inverse for {m}")
        cur = apply_move(cur, m)
    return inv[::-1]


class EquivalenceResult(NamedTuple):
    path: list[Move] | None
    exhausted: bool
    expanded: int

    @property
    def found(self) -> bool:
        return self.path is not None


def equivalence_search(
    w1: BookLinkWord,
    w2: BookLinkWord,
    budget: int = 10_000,
    allow_stab: bool = False,
    insertions: bool = False,
    max_events: int | None = None,
) -> EquivalenceResult:
    """Breadth-first search for a move path from ``w1`` to ``w2``.

    Nodes are deduplicated by canonical form; ``budget`` caps node
    expansions.  A node whose canonical form equals that of ``w2`` is joined
    to ``w2`` through the explicit canonicalization moves, so every returned
    path replays exactly onto ``w2``.  A ``None`` path means either the budget
    ran out (``exhausted``) or the finite search space was used up; neither
    proves inequivalence.
    """
    require_valid(w1)
    require_valid(w2)
    if w1 == w2:
        return EquivalenceResult([], False, 0)
    kinds = set(ISOTOPY_KINDS)
    if allow_stab:
        kinds |= STABILIZATION_KINDS
    limit = max_events if max_events is not None else max(len(w1.events), len(w2.events)) + 4
    p2, c2 = canonical_path(w2)
    back = inverse_path(w2, p2)
    from collections import deque

    start_key = canonical_form(w1)
    seen = {start_key}
    queue = deque([(w1, None)])
    nodes = {w1: None}  # word -> (prev word, move)
    expanded = 0
    while queue:
        if expanded >= budget:
            return EquivalenceResult(None, True, expanded)
        cur, _ = queue.popleft()
        expanded += 1
        succs = []
        for m in enumerate_moves(cur, kinds, insertions=insertions):
            nxt = apply_move(cur, m)
            if len(nxt.events) > limit:
                continue
            if nxt == w2:
                return EquivalenceResult(_unwind(nodes, cur) + [m], False, expanded)
            succs.append((m, nxt))
        pc, cc = canonical_path(cur)
        if cc == c2:
            return EquivalenceResult(_unwind(nodes, cur) + pc + back, False, expanded)
        for m, nxt in succs:
            key = canonical_form(nxt)
            if key in seen:
                continue
            seen.add(key)
            nodes[nxt] = (cur, m)
            queue.append((nxt, None))
    return EquivalenceResult(None, False, expanded)


def _unwind(nodes: dict, w: BookLinkWord) -> list[Move]:
    out = []
    while nodes.get(w) is not None:
        prev, m = nodes[w]
        out.append(m)
        w = prev
    return out[::-1]


def equivalent_bounded(
    w1: BookLinkWord, w2: BookLinkWord, budget: int = 10_000, allow_stab: bool = False
) -> list[Move] | None:
    """A certifying move path from ``w1`` to ``w2`` or None (budget exhausted or not found)."""
    return equivalence_search(w1, w2, budget, allow_stab).path
