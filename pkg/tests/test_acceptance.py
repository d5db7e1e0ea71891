"""Acceptance criteria, one check per criterion.

Each check returns (ok, detail) and prints one PASS/FAIL line.  Run with
``pytest tests/test_acceptance.py -s`` or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from booklinks import (  # noqa: E402
    MoveKind,
    apply_move,
    bridge_index,
    components,
    enumerate_moves,
    geometric_braid_index,
    jones,
    jones_with_axis,
    kauffman_bracket,
    linking_with_axis,
    parse_word,
    spectrum_upper_bounds,
    to_diagram,
    validate,
    word,
)
from booklinks.diagram import parse_pd, signed_profile  # noqa: E402
from booklinks.moves import ISOTOPY_KINDS, Move  # noqa: E402
from booklinks.spectrum import check_monotone  # noqa: E402
from booklinks.tiles import (  # noqa: E402
    ComplexError,
    _all_rotations,
    apply_step,
    check_complex,
    generate_annulus,
    is_choker,
    normalize_annulus,
    rotate,
    step_bound,
)
from oracles import FIGURE_EIGHT_PD, naive_bracket, naive_knot_jones  # noqa: E402
from tilefix import H1, H2, T, monkey_saddle_pair  # noqa: E402
from wordgen import random_word  # noqa: E402

DATA = Path(__file__).parent / "data"
N_WORDS = 250


def _words(seed: int, n: int = N_WORDS, max_events: int = 12):
    rng = random.Random(seed)
    return [random_word(rng, max_events) for _ in range(n)]


RESULTS: list[str] = []  # echoed in the pytest terminal summary


def _report(num: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({detail}; {seconds:.1f}s)"
    RESULTS.append(line)
    print(line)


# 1 -------------------------------------------------------------------------


FIG8_WORDS = {
    (2, 0): "base 0\nu1 u3 s2 S1 s2 S1 n2 n1",
    (1, 1): "base 1\nu1 s2 S1 s2 S1 n2",
    (1, 2): "base 2\nu3 s1 S2 s1 S2 n3",
    (0, 3): "base 3\ns1 S2 s1 S2",
}


def check_figure_eight_realizations():
    expected = naive_knot_jones(FIGURE_EIGHT_PD)
    bad = []
    for (d, b), text in FIG8_WORDS.items():
        w = parse_word(text)
        if not validate(w):
            bad.append(f"{text!r} invalid")
            continue
        if (bridge_index(w), geometric_braid_index(w)) != (d, b):
            bad.append(f"{text!r} has indices {(bridge_index(w), geometric_braid_index(w))}")
        if components(w).n_components != 1 or jones(w).terms != expected:
            bad.append(f"{text!r} jones {jones(w)}")
    return not bad, "; ".join(bad) or "4 words, (bridge, braid) = (2,0) (1,1) (1,2) (0,3), jones = oracle"


# 2 -------------------------------------------------------------------------


def check_spectrum_reproduction():
    cases = [("unknot", word(1), (1, 0)), ("trefoil", word(2, "s1 s1 s1"), (2, 1, 0)), ("figure-eight", word(3, "s1 S2 s1 S2"), (3, 1, 0))]
    bad, got = [], []
    for name, w, want in cases:
        b = spectrum_upper_bounds(w, d_max=3, budget=1_000_000)
        got.append(f"{name} {b.trimmed()} in {b.expanded} expansions")
        if b.trimmed() != want or not check_monotone(b) or b.exhausted:
            bad.append(f"{name}: got {b.values}, want {want}")
        for e in b.entries:
            if jones(e.witness) != jones(w):
                bad.append(f"{name}: witness at d={e.d} changed the knot type")
    return not bad, "; ".join(bad or got)


# 3 -------------------------------------------------------------------------


def _isotopy_invariants(w):
    cm = components(w)
    return (
        jones(w),
        jones_with_axis(w),
        cm.n_components,
        tuple(sorted(cm.critical_counts())),
        signed_profile(w)[0] if w.base else 0,
    )


def check_move_invariance():
    failures, moves_checked = [], 0
    words = _words(3)
    for w in words:
        before = _isotopy_invariants(w)
        for m in enumerate_moves(w, ISOTOPY_KINDS):
            moves_checked += 1
            if _isotopy_invariants(apply_move(w, m)) != before:
                failures.append(f"{w!s} {m}")
    return not failures, f"{len(words)} words, {moves_checked} moves, {len(failures)} failures"


# 4 -------------------------------------------------------------------------


def check_stabilization_discrimination():
    bad, witness = 0, None
    count = 0
    for w in _words(4):
        for m in enumerate_moves(w, {MoveKind.STABILIZE}):
            nxt = apply_move(w, m)
            count += 1
            if abs(linking_with_axis(nxt) - linking_with_axis(w)) != 1:
                bad += 1
            if witness is None and jones(nxt) == jones(w) and jones_with_axis(nxt) != jones_with_axis(w):
                witness = f"[{' '.join(str(w).split())}] -> [{' '.join(str(nxt).split())}]"
    ok = bad == 0 and witness is not None
    return ok, f"{count} stabilizations, {bad} with |delta lk| != 1, witness {witness}"


# 5 -------------------------------------------------------------------------


def check_zigzag_law():
    bad, count = 0, 0
    for w in _words(5):
        b, d = geometric_braid_index(w), bridge_index(w)
        for m in enumerate_moves(w, {MoveKind.ZIGZAG_INSERT}):
            up = apply_move(w, m)
            count += 1
            back = apply_move(up, Move(MoveKind.ZIGZAG_CANCEL, m.index))
            if back != w or bridge_index(up) != d + 1 or geometric_braid_index(up) != b:
                bad += 1
    return bad == 0, f"{count} insertions, {bad} failures"


# 6 -------------------------------------------------------------------------


def _annulus_params(n: int = 100):
    out = []
    rng = random.Random(6)
    while len(out) < n:
        d = rng.randint(1, 3)
        out.append((d, rng.randint(0, 2 * d - 2), rng.randrange(10**6)))
    return out


def check_tile_engine():
    bad, longest = [], 0
    for d, extra, seed in _annulus_params():
        c = generate_annulus(d, extra, seed)
        if len(c.hyperbolic()) > 20:
            bad.append("too many h-tiles")
        try:
            out, trace = normalize_annulus(c)
        except ComplexError as exc:
            bad.append(f"{(d, extra, seed)}: {exc}")
            continue
        longest = max(longest, len(trace))
        if len(trace) > step_bound(c):
            bad.append(f"{(d, extra, seed)}: {len(trace)} steps > bound {step_bound(c)}")
        cur = c
        for op, args in trace.steps:
            cur = apply_step(cur, op, args)
            rep = check_complex(cur)
            if not rep:
                bad.append(f"{(d, extra, seed)}: intermediate {rep}")
                break
        if cur.adjacency_key() != out.adjacency_key() or not is_choker(out):
            bad.append(f"{(d, extra, seed)}: output is not a choker")
    return not bad, "; ".join(bad[:3]) or f"100 complexes, longest trace {longest}, all chokers"


# 7 -------------------------------------------------------------------------


def check_rotate_involution():
    bad, count = [], 0
    for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        c = monkey_saddle_pair(*signs)
        for pair in ((H1, H2), (H2, H1)):
            for direction in (1, -1):
                r = rotate(c, *pair, direction)
                count += 1
                if r.kind_multiset() != c.kind_multiset() or rotate(r, *pair, -direction).adjacency_key() != c.adjacency_key():
                    bad.append(f"pair complex {signs} {pair} {direction}")
    r = rotate(monkey_saddle_pair(), H1, H2, 1)
    if set(r.neighbors(H1)) != {H2, T[1], T[2], T[6]} or set(r.neighbors(H2)) != {H1, T[3], T[4], T[5]}:
        bad.append("neighbor reattachment")
    for d, extra, seed in _annulus_params(60):
        c = generate_annulus(d, extra, seed)
        for h1, h2, direction in _all_rotations(c):
            try:
                r = rotate(c, h1, h2, direction)
            except ComplexError:
                continue
            count += 1
            if r.kind_multiset() != c.kind_multiset() or rotate(r, h1, h2, -direction).adjacency_key() != c.adjacency_key():
                bad.append(f"{(d, extra, seed)} {(h1, h2, direction)}")
    return not bad, "; ".join(bad[:3]) or f"{count} rotations restored, multisets conserved"


# 8 -------------------------------------------------------------------------


def check_oracle_equivalence():
    diagrams = []
    for f in sorted(DATA.glob("*.blw")):
        w = parse_word(f.read_text())
        diagrams += [(f.name, to_diagram(w)), (f.name + "+axis", to_diagram(w, include_axis=True))]
    for f in sorted(DATA.glob("*.pd")):
        diagrams.append((f.name, parse_pd(f.read_text())))
    bad, used = [], 0
    for name, d in diagrams:
        if d.n_crossings > 8:
            continue
        used += 1
        if kauffman_bracket(d).terms != naive_bracket(d.crossings, d.free_loops):
            bad.append(name)
    return not bad, f"{used} corpus diagrams with <= 8 crossings, mismatches: {bad or 'none'}"


CRITERIA = [
    (1, "figure-eight realizations", check_figure_eight_realizations, 10),
    (2, "spectrum reproduction", check_spectrum_reproduction, 300),
    (3, "move invariance", check_move_invariance, None),
    (4, "stabilization discrimination", check_stabilization_discrimination, None),
    (5, "zigzag law", check_zigzag_law, None),
    (6, "tile engine soundness", check_tile_engine, 60),
    (7, "rotate involution and conservation", check_rotate_involution, None),
    (8, "oracle equivalence", check_oracle_equivalence, None),
]


def _run(num: int) -> bool:
    _, title, fn, limit = CRITERIA[num - 1]
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, f"{detail}; over the {limit}s limit"
    _report(num, title, ok, detail, dt)
    return ok


def test_criterion_1_figure_eight_realizations():
    assert _run(1)


def test_criterion_2_spectrum_reproduction():
    assert _run(2)


def test_criterion_3_move_invariance():
    assert _run(3)


def test_criterion_4_stabilization_discrimination():
    assert _run(4)


def test_criterion_5_zigzag_law():
    assert _run(5)


def test_criterion_6_tile_engine_soundness():
    assert _run(6)


def test_criterion_7_rotate_involution():
    assert _run(7)


def test_criterion_8_oracle_equivalence():
    assert _run(8)


if __name__ == "__main__":
    results = [_run(n) for n, *_ in CRITERIA]
    sys.exit(0 if all(results) else 1)
