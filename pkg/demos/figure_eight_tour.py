"""A walk through four book-link pictures of the figure-eight knot.

Each word below puts the knot in a different position relative to the
binding.  The indices move, the knot type does not.
"""

from booklinks import bridge_index, geometric_braid_index, jones, parse_word, spectrum_upper_bounds

WORDS = [
    "base 3\ns1 S2 s1 S2",  # a closed 3-braid around the binding
    "base 2\nu3 s1 S2 s1 S2 n3",
    "base 1\nu1 s2 S1 s2 S1 n2",
    "base 0\nu1 u3 s2 S1 s2 S1 n2 n1",  # a plat: misses the binding entirely
]

print("Four words, one knot:\n")
for text in WORDS:
    w = parse_word(text)
    print(f"  {' '.join(text.split())}")
    print(f"    bridge={bridge_index(w)} braid={geometric_braid_index(w)}  jones={jones(w)}")

print("\nTrading strands around the binding for maxima never costs more than one")
print("strand per maximum.  A bounded search finds the cheapest trade it can:\n")
b = spectrum_upper_bounds(parse_word(WORDS[0]), d_max=3)
for e in b.entries:
    tag = "exact" if e.exact else "upper bound"
    print(f"  d={e.d}: b <= {e.bound} ({tag}), witness {' '.join(str(e.witness).split())}")
print(f"\n{b.expanded} nodes expanded.")
