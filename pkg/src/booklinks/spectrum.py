"""Upper bounds on the book index spectrum by bounded search over book-link words.

``b(d)`` is the least braid index (minimum strand count over pages) of a
representative with exactly ``d`` maxima.  The search only ever produces
representatives, so every number here is an upper bound; a few link types
have known exact spectra, and bounds that meet them are labeled exact.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .diagram import jones
from .laurent import LaurentPoly
from .moves import (
    ISOTOPY_KINDS,
    Move,
    MoveKind,
    apply_move,
    apply_path,
    canonical_path,
    enumerate_moves,
)
from .words import BookLinkWord, bridge_index, format_word, geometric_braid_index, require_valid

SEARCH_KINDS = frozenset(ISOTOPY_KINDS) | {
    MoveKind.DESTABILIZE,
    MoveKind.STABILIZE,
    MoveKind.ZIGZAG_CANCEL,
    MoveKind.AXIS_PASS,
}


@dataclass
class SpectrumEntry:
    d: int
    bound: int | None = None
    witness: BookLinkWord | None = None
    path: list[Move] = field(default_factory=list)
    exact: bool = False


@dataclass
class SpectrumBounds:
    entries: list[SpectrumEntry]
    expanded: int = 0
    budget: int = 0
    exhausted: bool = False
    certified_as: str | None = None

    @property
    def values(self) -> tuple[int | None, ...]:
        return tuple(e.bound for e in self.entries)

    def trimmed(self) -> tuple[int, ...]:
        """Bounds up to and including the first zero."""
        out = []
        for v in self.values:
            out.append(v)
            if v == 0:
                break
        return tuple(out)


def _zigzag_up(w: BookLinkWord) -> tuple[BookLinkWord, Move]:
    """Insert a zigzag on the strand that realizes the minimum page count (or anywhere if empty)."""
    counts = w.counts()
    t = min(range(len(counts)), key=lambda i: counts[i])
    if counts[t] == 0:
        m = Move(MoveKind.ZIGZAG_INSERT, t, 1, variant="up")
        # an empty interval has no strand to perturb: drop in a cup/cap pair there instead
        # via the innermost strand of the nearest nonempty interval
        t = next((i for i, c in enumerate(counts) if c > 0), None)
        if t is None:
            raise ValueError("empty word has no strand to perturb")
        m = Move(MoveKind.ZIGZAG_INSERT, t, 1, variant="up")
    else:
        m = Move(MoveKind.ZIGZAG_INSERT, t, 1, variant="up")
    return apply_move(w, m), m


# Known spectra, keyed by the Jones polynomial of the knot type (exact-value labels only).
def _known_spectra() -> dict:
    t = lambda terms: LaurentPoly(terms, "t")  # noqa: E731
    return {
        t({0: 1}).key(): ("unknot", (1, 0)),
        t({1: 1, 3: 1, 4: -1}).key(): ("right-handed trefoil", (2, 1, 0)),
        t({-1: 1, -3: 1, -4: -1}).key(): ("left-handed trefoil", (2, 1, 0)),
        t({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}).key(): ("figure-eight knot", (3, 1, 0)),
    }


def spectrum_upper_bounds(
    word: BookLinkWord,
    d_max: int = 3,
    budget: int = 100_000,
    max_events: int | None = None,
) -> SpectrumBounds:
    """Best-first search for low braid index representatives at each bridge index.

    Nodes are words reachable from ``word`` by isotopy moves, stabilization,
    destabilization, zigzag cancellation and passes of a cup/cap pair through
    the binding; they are deduplicated by canonical form.  Nodes are taken in
    order of (bridge + braid index, braid index, crossing count, length).
    ``budget`` caps node expansions; the search stops early once every
    entry meets its floor: 0, or 1 at d = 0 for a nonempty link, or the
    known value when the knot type is one with a certified spectrum.  Bounds
    are then pushed up the spectrum by zigzag insertion, making the result
    non-increasing.
    """
    require_valid(word)
    d_max = max(d_max, 0)
    limit = max_events if max_events is not None else len(word.events) + 8
    entries = [SpectrumEntry(d) for d in range(d_max + 1)]
    nonempty = 1 if word.events or word.base else 0
    floors = [nonempty if d == 0 else 0 for d in range(d_max + 1)]
    known = _lookup_known(word)
    if known is not None:
        # a certified value cannot be beaten, so reaching it ends the search early
        floors = [known[1][d] if d < len(known[1]) else 0 for d in range(d_max + 1)]

    def offer(w: BookLinkWord, path: list[Move]) -> None:
        d = bridge_index(w)
        if d > d_max:
            return
        b = geometric_braid_index(w)
        e = entries[d]
        if e.bound is None or b < e.bound or (b == e.bound and len(path) < len(e.path)):
            e.bound, e.witness, e.path = b, w, list(path)

    def done() -> bool:
        # zigzag insertion later carries a bound at d to every larger d
        best = None
        for e in entries:
            if e.bound is not None:
                best = e.bound if best is None else min(best, e.bound)
            if best is None or best > floors[e.d]:
                return False
        return True

    def prio(w: BookLinkWord, n: int) -> tuple:
        b = geometric_braid_index(w)
        d = bridge_index(w)
        crossings = sum(1 for e in w.events if e.is_crossing)
        return (b + d, b, crossings, len(w.events), n)

    counter = 0
    start_path, start = canonical_path(word)
    heap = [(prio(start, 0), start, start_path)]
    seen = {start}
    offer(word, [])
    offer(start, start_path)
    expanded = 0
    exhausted = False
    while heap:
        if done():
            break
        if expanded >= budget:
            exhausted = True
            break
        _, cur, path = heapq.heappop(heap)
        expanded += 1
        for m in enumerate_moves(cur, SEARCH_KINDS, insertions=False, passes=True):
            nxt = apply_move(cur, m)
            if len(nxt.events) > limit:
                continue
            cpath, key = canonical_path(nxt)
            if key in seen:
                continue
            seen.add(key)
            npath = path + [m] + cpath
            offer(key, npath)
            counter += 1
            heapq.heappush(heap, (prio(key, counter), key, npath))

    # zigzag post-processing: a d-witness gives a (d+1)-witness with the same braid index
    for d in range(d_max):
        lo, hi = entries[d], entries[d + 1]
        if lo.witness is None or not (lo.witness.events or lo.witness.base):
            continue
        if hi.bound is None or lo.bound < hi.bound:
            w, m = _zigzag_up(lo.witness)
            hi.bound, hi.witness, hi.path = geometric_braid_index(w), w, lo.path + [m]

    result = SpectrumBounds(entries, expanded, budget, exhausted)
    _label_exact(word, result)
    return result


def _lookup_known(word: BookLinkWord):
    try:
        j = jones(word)
    except ValueError:
        return None
    return _known_spectra().get(j.key())


def _label_exact(word: BookLinkWord, result: SpectrumBounds) -> None:
    known = _lookup_known(word)
    if known is None:
        return
    name, spectrum = known
    exact = True
    for e in result.entries:
        want = spectrum[e.d] if e.d < len(spectrum) else 0
        if e.bound == want:
            e.exact = True
        else:
            exact = False
    if exact:
        result.certified_as = name


def replay_witness(word: BookLinkWord, entry: SpectrumEntry) -> BookLinkWord:
    """Replay an entry's move path from the input word."""
    return apply_path(word, entry.path)


@dataclass(frozen=True)
class MonotoneReport:
    ok: bool
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def check_monotone(b: SpectrumBounds | tuple | list, exact: bool | None = None) -> MonotoneReport:
    """Check that bounds never increase with d, and strictly decrease until the first zero.

    The strict check only applies to certified (exact) values: for a plain
    tuple pass ``exact=True`` to request it (the default treats tuples as exact).
    """
    if isinstance(b, SpectrumBounds):
        vals = list(b.values)
        certified = [e.exact for e in b.entries]
    else:
        vals = list(b)
        certified = [True if exact is None else exact] * len(vals)
    for d in range(len(vals) - 1):
        if vals[d] is None or vals[d + 1] is None:
            continue
        if vals[d + 1] > vals[d]:
            return MonotoneReport(False, f"increase at d={d + 1}: {vals[d]} -> {vals[d + 1]}")
        if vals[d] > 0 and vals[d + 1] == vals[d] and certified[d] and certified[d + 1]:
            return MonotoneReport(False, f"no strict decrease at d={d + 1} before reaching 0")
    return MonotoneReport(True)


def format_report(b: SpectrumBounds, witness_names: list[str] | None = None) -> str:
    lines = []
    for e in b.entries:
        name = witness_names[e.d] if witness_names else "-"
        label = "" if e.exact else " (upper bound)"
        bound = "?" if e.bound is None else str(e.bound)
        lines.append(f"d={e.d} b<={bound} witness={name}{label}")
    return "\n".join(lines) + "\n"


def format_machine(b: SpectrumBounds) -> str:
    lines = [f"expanded={b.expanded}", f"budget={b.budget}", f"exhausted={str(b.exhausted).lower()}"]
    if b.certified_as:
        lines.append(f"certified={b.certified_as.replace(' ', '_')}")
    for e in b.entries:
        lines.append(f"d={e.d} bound={e.bound} exact={str(e.exact).lower()} path_length={len(e.path)}")
        if e.witness is not None:
            lines.append(f"d={e.d} witness={format_word(e.witness).replace(chr(10), ' ').strip()}")
    return "\n".join(lines) + "\n"
