"""Moves on words, and what they do and do not see.

Isotopy moves keep every invariant.  A stabilization keeps the knot but
changes how it links the binding, which the Jones polynomial of the link
with the binding notices.
"""

from booklinks import Move, MoveKind, apply_move, enumerate_moves, equivalent_bounded, jones, jones_with_axis, linking_with_axis, word
from booklinks.moves import ISOTOPY_KINDS, apply_path

w = word(2, "s1 s1 s1")
flat = lambda x: " ".join(str(x).split())  # noqa: E731
print(f"Start from the trefoil {flat(w)}")
moves = enumerate_moves(w, ISOTOPY_KINDS)
print(f"{len(moves)} isotopy moves apply; every result has Jones {jones(w)}:")
for m in moves[:6]:
    print(f"  {m} -> {flat(apply_move(w, m))}")

s = apply_move(w, Move(MoveKind.STABILIZE, 0, sign=1))
print(f"\nStabilized: {flat(s)}")
print(f"  linking with the binding {linking_with_axis(w)} -> {linking_with_axis(s)}")
print(f"  Jones of the knot      {jones(w)} -> {jones(s)}")
print(f"  Jones with the binding {jones_with_axis(w)} -> {jones_with_axis(s)}")
print("  (the new value equals the Hopf link's; a polynomial is not a complete invariant)")

print("\nA bounded search recovers a braid relation:")
a, b = word(3, "s1 s2 s1 s1"), word(3, "s2 s1 s2 s1")
path = equivalent_bounded(a, b, budget=500)
print(f"  {len(path)} moves: " + ", ".join(map(str, path)))
assert apply_path(a, path) == b

print("\nWithout stabilization the 1-strand unknot never reaches the 2-strand one:")
print(f"  path = {equivalent_bounded(word(1), word(2, 's1'), budget=200)}")
path = equivalent_bounded(word(1), word(2, "s1"), budget=200, allow_stab=True)
print(f"  with stabilization: {', '.join(map(str, path))}")
