"""Pushing a tiled annulus into its normal form.

A random annulus with some h-tiles hanging off the separating cycle is
rotated, one pair of tiles at a time, until every h-tile sits on the
cycle with one boundary tile on each side.
"""

from booklinks.tiles import annulus_status, check_complex, generate_annulus, normalize_annulus, replay, step_bound, to_dot

c = generate_annulus(d=3, n_extra=3, seed=11)
st = annulus_status(c)
print(f"Generated: {len(c.hyperbolic())} h-tiles, {len(st['off_cycle'])} off the cycle, "
      f"{len(st['not_good'])} on it but not good. Valid: {check_complex(c)}")

out, trace = normalize_annulus(c)
print(f"\nNormalized with {len(trace)} rotations (allowed: {step_bound(c)}):")
for op, args in trace.steps:
    print(f"  {op} {args}")
print(f"Status: {trace.status}")
assert replay(c, trace).adjacency_key() == out.adjacency_key()
print("Replaying the trace from the input gives the same complex.")

print("\nDOT for the result (pipe into `dot -Tsvg`):\n")
print(to_dot(out))
