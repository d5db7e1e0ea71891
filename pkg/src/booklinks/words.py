"""Book-link words: the combinatorial data of a link in the standard open book of S^3.

A word lists, in increasing page angle, the events met by the link: crossings
between adjacent strands (``s<i>`` positive, ``S<i>`` negative), cups ``u<i>``
(local minima of the page angle, inserting strands ``i, i+1``) and caps
``n<i>`` (local maxima, joining strands ``i, i+1``).  ``base`` is the number of
strands crossing the base page.  Strand positions are 1-based and counted
outward from the binding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

CROSSING_KINDS = ("s", "S")
CUP, CAP = "u", "n"
KINDS = ("s", "S", "u", "n")
_KIND_RANK = {"s": 0, "S": 1, "u": 2, "n": 3}


class WordError(ValueError):
    """Raised when an operation needs a valid word and gets an invalid one."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class Event(NamedTuple):
    kind: str
    pos: int

    @property
    def is_crossing(self) -> bool:
        return self.kind in CROSSING_KINDS

    @property
    def sign(self) -> int:
        """+1 / -1 for crossings, 0 for critical points."""
        return {"s": 1, "S": -1}.get(self.kind, 0)

    @property
    def delta(self) -> int:
        return {"u": 2, "n": -2}.get(self.kind, 0)

    def span(self) -> tuple[int, int, int]:
        """(position, strands consumed, strands produced)."""
        if self.kind == CUP:
            return self.pos, 0, 2
        if self.kind == CAP:
            return self.pos, 2, 0
        return self.pos, 2, 2

    def sort_key(self) -> tuple[int, int]:
        return _KIND_RANK[self.kind], self.pos

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"


def crossing(i: int, sign: int = 1) -> Event:
    return Event("s" if sign > 0 else "S", i)


@dataclass(frozen=True)
class BookLinkWord:
    base: int
    events: tuple[Event, ...] = ()

    def __post_init__(self):
        # accept lists / tuples of pairs for convenience
        evs = tuple(e if isinstance(e, Event) else Event(*e) for e in self.events)
        object.__setattr__(self, "events", evs)

    def __len__(self) -> int:
        return len(self.events)

    def __str__(self) -> str:
        return format_word(self)

    def counts(self) -> list[int]:
        """Running strand counts, without validation."""
        out = [self.base]
        for e in self.events:
            out.append(out[-1] + e.delta)
        return out

    @property
    def n_cups(self) -> int:
        return sum(1 for e in self.events if e.kind == CUP)

    @property
    def n_caps(self) -> int:
        return sum(1 for e in self.events if e.kind == CAP)


def word(base: int, text: str = "") -> BookLinkWord:
    """Shorthand: ``word(2, "s1 s1 s1")``."""
    return BookLinkWord(base, tuple(_parse_event(tok, 1, 1) for tok in text.split()))


# ---------------------------------------------------------------------------
# DSL

_EVENT_RE = re.compile(r"^([sSun])([1-9][0-9]*)$")


def _parse_event(tok: str, line: int, col: int) -> Event:
    m = _EVENT_RE.match(tok)
    if not m:
        raise ParseError(f"bad event token {tok!r}", line, col)
    return Event(m.group(1), int(m.group(2)))


def parse_word(text: str) -> BookLinkWord:
    """Parse the word DSL: ``base <k>`` then whitespace-separated events."""
    base = None
    events: list[Event] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for m in re.finditer(r"\S+", line):
            tok, col = m.group(0), m.start() + 1
            if base is None:
                if tok != "base":
                    raise ParseError("expected 'base <k>'", lineno, col)
                base = "pending"
                continue
            if base == "pending":
                if not tok.isdigit():
                    raise ParseError(f"bad base count {tok!r}", lineno, col)
                base = int(tok)
                continue
            events.append(_parse_event(tok, lineno, col))
    if base is None or base == "pending":
        raise ParseError("missing 'base <k>' header", 1, 1)
    return BookLinkWord(base, tuple(events))


def format_word(w: BookLinkWord) -> str:
    head = f"base {w.base}\n"
    if not w.events:
        return head
    return head + " ".join(str(e) for e in w.events) + "\n"


# ---------------------------------------------------------------------------
# validation and indices


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    event_index: int | None = None  # 1-based, None for whole-word failures
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = f"event {self.event_index}: " if self.event_index else ""
        return f"error: {where}{self.message}"


def validate(w: BookLinkWord) -> ValidationReport:
    if w.base < 0:
        return ValidationReport(False, None, "negative base count")
    k = w.base
    for idx, e in enumerate(w.events, start=1):
        if e.kind not in KINDS:
            return ValidationReport(False, idx, f"unknown event kind {e.kind!r}")
        if e.pos < 1:
            return ValidationReport(False, idx, f"position {e.pos} out of range")
        if e.is_crossing and k < e.pos + 1:
            return ValidationReport(False, idx, f"crossing {e} needs count >= {e.pos + 1}, have {k}")
        if e.kind == CUP and e.pos > k + 1:
            return ValidationReport(False, idx, f"cup {e} needs position <= {k + 1}")
        if e.kind == CAP and e.pos > k - 1:
            return ValidationReport(False, idx, f"cap {e} needs count >= {e.pos + 1}, have {k}")
        k += e.delta
        if k < 0:
            return ValidationReport(False, idx, "negative strand count")
    if k != w.base:
        return ValidationReport(False, None, f"closure mismatch: final count {k} != base {w.base}")
    if w.n_cups != w.n_caps:
        return ValidationReport(False, None, "cup/cap imbalance")
    return ValidationReport(True)


def require_valid(w: BookLinkWord) -> None:
    rep = validate(w)
    if not rep:
        raise WordError(str(rep))


def is_valid(w: BookLinkWord) -> bool:
    return validate(w).ok


def strand_profile(w: BookLinkWord) -> tuple[int, ...]:
    require_valid(w)
    return tuple(w.counts())


def geometric_braid_index(w: BookLinkWord) -> int:
    return min(strand_profile(w))


def bridge_index(w: BookLinkWord) -> int:
    """Number of maxima (caps); the raw critical-point count is twice this."""
    require_valid(w)
    return w.n_caps


# ---------------------------------------------------------------------------
# strand tracing
#
# A slot (t, p) is strand position p on regular interval t, 0 <= t < len(events);
# interval len(events) is identified with interval 0 by the closure.


def _forward(w: BookLinkWord, t: int, p: int) -> tuple[int, int, int]:
    """Step from slot (t, p) through event t; returns (interval, pos, direction)."""
    n = len(w.events)
    if n == 0:
        return 0, p, 1
    e = w.events[t]
    nt = (t + 1) % n
    i = e.pos
    if e.is_crossing:
        if p == i:
            return nt, i + 1, 1
        if p == i + 1:
            return nt, i, 1
        return nt, p, 1
    if e.kind == CUP:
        return nt, (p if p < i else p + 2), 1
    # cap
    if p == i:
        return t, i + 1, -1
    if p == i + 1:
        return t, i, -1
    return nt, (p if p < i else p - 2), 1


def _backward(w: BookLinkWord, t: int, p: int) -> tuple[int, int, int]:
    """Step from slot (t, p) back through event t-1."""
    n = len(w.events)
    if n == 0:
        return 0, p, -1
    pt = (t - 1) % n
    e = w.events[pt]
    i = e.pos
    if e.is_crossing:
        if p == i:
            return pt, i + 1, -1
        if p == i + 1:
            return pt, i, -1
        return pt, p, -1
    if e.kind == CAP:
        return pt, (p if p < i else p + 2), -1
    # cup
    if p == i:
        return t, i + 1, 1
    if p == i + 1:
        return t, i, 1
    return pt, (p if p < i else p - 2), -1


def _slots(w: BookLinkWord) -> Iterator[tuple[int, int]]:
    counts = w.counts()
    for t in range(max(len(w.events), 1)):
        for p in range(1, counts[t] + 1):
            yield t, p


def trace_component(w: BookLinkWord, t: int, p: int, direction: int = 1) -> list[tuple[int, int, int]]:
    """Visit every slot of the component through (t, p), as (t, p, direction)."""
    start = (t, p, direction)
    path = [start]
    cur = start
    while True:
        ct, cp, cd = cur
        cur = _forward(w, ct, cp) if cd > 0 else _backward(w, ct, cp)
        if cur == start:
            return path
        path.append(cur)


@dataclass(frozen=True)
class ComponentMap:
    """Partition of strand slots into oriented components.

    ``slot_component[(t, p)]`` is the component id, ``slot_direction[(t, p)]``
    is +1 when the component runs with increasing page angle there.
    ``event_component[j]`` is the component of a cup/cap event (for crossings,
    a pair: component of the lower then the upper strand on the left side).
    """

    n_components: int
    slot_component: dict = field(repr=False)
    slot_direction: dict = field(repr=False)
    event_component: tuple = field(repr=False)
    maxima: tuple[int, ...] = ()
    minima: tuple[int, ...] = ()
    winding: tuple[int, ...] = ()

    def critical_counts(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.maxima, self.minima))


def components(w: BookLinkWord) -> ComponentMap:
    """Trace and orient the components of ``w``.

    Each component is oriented so that its signed count through the base page
    (its linking number with the binding) is non-negative; components with
    zero winding keep the orientation of their first traversal, which starts at
    their lowest slot on the earliest interval and runs forward.
    """
    require_valid(w)
    n = len(w.events)
    comp: dict[tuple[int, int], int] = {}
    direc: dict[tuple[int, int], int] = {}
    traces = []
    for t, p in _slots(w):
        if (t, p) in comp:
            continue
        cid = len(traces)
        path = trace_component(w, t, p, 1)
        traces.append(path)
        for st, sp, sd in path:
            comp[(st, sp)] = cid
            direc[(st, sp)] = sd
    winding = [0] * len(traces)
    for p in range(1, w.base + 1):
        winding[comp[(0, p)]] += direc[(0, p)]
    for cid, path in enumerate(traces):
        if winding[cid] < 0:
            winding[cid] = -winding[cid]
            for st, sp, _ in path:
                direc[(st, sp)] = -direc[(st, sp)]
    ev_comp = []
    maxima = [0] * len(traces)
    minima = [0] * len(traces)
    for j, e in enumerate(w.events):
        if e.kind == CAP:
            c = comp[(j, e.pos)]
            maxima[c] += 1
            ev_comp.append(c)
        elif e.kind == CUP:
            c = comp[((j + 1) % n, e.pos)]
            minima[c] += 1
            ev_comp.append(c)
        else:
            ev_comp.append((comp[(j, e.pos)], comp[(j, e.pos + 1)]))
    return ComponentMap(
        n_components=len(traces),
        slot_component=comp,
        slot_direction=direc,
        event_component=tuple(ev_comp),
        maxima=tuple(maxima),
        minima=tuple(minima),
        winding=tuple(winding),
    )


def component_count(w: BookLinkWord) -> int:
    return components(w).n_components


def critical_signature(w: BookLinkWord) -> tuple[tuple[int, int, int], ...]:
    """Sorted multiset of (maxima, minima, winding) per component.

    Book-link isotopy preserves this multiset.
    """
    cm = components(w)
    return tuple(sorted(zip(cm.maxima, cm.minima, cm.winding)))
