import json
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from booklinks.tiles import (
    BOUNDARY_CORNER,
    ComplexError,
    Corner,
    RewriteTrace,
    annulus_status,
    bad_tile_measure,
    check_complex,
    choker,
    classify_surface,
    eliminate_bad_tiles,
    flip_sign,
    from_json,
    generate_annulus,
    is_choker,
    normalize_annulus,
    replay,
    rotate,
    step_bound,
    tile_kind,
    to_dot,
    to_json,
    unresolve_extremal,
)
from tilefix import H1, H2, T, monkey_saddle_pair, with_degree_two_extremal, with_unbalanced_region

annuli = st.tuples(st.integers(1, 3), st.integers(0, 4), st.integers(0, 10_000)).filter(lambda t: t[1] <= 2 * t[0] - 2)


def test_minimal_choker_is_valid():
    c = choker(1)
    assert check_complex(c)
    assert len(c.hyperbolic()) == 2 and len(c.extremal()) == 4
    assert is_choker(c)


def test_degree_two_extremal_rejected():
    rep = check_complex(with_degree_two_extremal())
    assert not rep and "degree 2" in rep.message


def test_three_degree_one_vertices_in_a_region_rejected():
    rep = check_complex(with_unbalanced_region())
    assert not rep and "degree-1" in rep.message


def test_rotate_reattaches_neighbors():
    c = rotate(monkey_saddle_pair(), H1, H2, 1)
    assert set(c.neighbors(H1)) == {H2, T[6], T[1], T[2]}
    assert set(c.neighbors(H2)) == {H1, T[3], T[4], T[5]}


@pytest.mark.parametrize("signs", [(1, 1), (-1, -1), (1, -1), (-1, 1)])
@pytest.mark.parametrize("pair", [(H1, H2), (H2, H1)])
@pytest.mark.parametrize("direction", [1, -1])
def test_rotate_back_restores_exhaustively(signs, pair, direction):
    c = monkey_saddle_pair(*signs)
    r = rotate(c, *pair, direction)
    assert r.kind_multiset() == c.kind_multiset()
    assert rotate(r, *pair, -direction).adjacency_key() == c.adjacency_key()


def test_rotate_preconditions():
    c = monkey_saddle_pair()
    with pytest.raises(ComplexError):
        rotate(c, H1, T[1])
    with pytest.raises(ComplexError):
        rotate(c, H1, H1)
    a = choker(2, [1, 1, 1, 1])
    with pytest.raises(ComplexError):
        rotate(a, 0, 2)  # not adjacent


def test_six_rotations_are_the_identity():
    c = monkey_saddle_pair()
    r = c
    for _ in range(6):
        r = rotate(r, H1, H2, 1)
    assert r.adjacency_key() == c.adjacency_key()


@given(annuli)
def test_generated_annuli_are_valid(params):
    d, extra, seed = params
    c = generate_annulus(d, extra, seed)
    assert check_complex(c)
    assert len(annulus_status(c)["off_cycle"]) == extra
    assert len(c.hyperbolic()) == 2 * d


@given(annuli, st.data())
def test_rotations_conserve_vertex_multiset(params, data):
    c = generate_annulus(*params)
    h1 = data.draw(st.sampled_from(c.hyperbolic()))
    hs = [v for v in c.neighbors(h1) if v != h1 and c.vertices[v].is_hyperbolic]
    if not hs:
        return
    h2 = data.draw(st.sampled_from(hs))
    direction = data.draw(st.sampled_from((1, -1)))
    try:
        r = rotate(c, h1, h2, direction)
    except ComplexError:
        return
    assert r.kind_multiset() == c.kind_multiset()
    assert rotate(r, h1, h2, -direction).adjacency_key() == c.adjacency_key()


@given(annuli)
def test_normalize_reaches_choker_and_replays(params):
    c = generate_annulus(*params)
    out, trace = normalize_annulus(c)
    assert is_choker(out)
    assert len(trace) <= step_bound(c)
    assert replay(c, trace).adjacency_key() == out.adjacency_key()
    assert out.kind_multiset() == c.kind_multiset()


def test_generate_rejects_impossible_requests():
    with pytest.raises(ComplexError):
        generate_annulus(1, 3, 0)
    with pytest.raises(ComplexError):
        generate_annulus(0, 0, 0)


def test_json_round_trip_and_trace_json():
    c = generate_annulus(3, 2, 5)
    assert from_json(to_json(c)).adjacency_key() == c.adjacency_key()
    json.loads(to_json(c))
    _, trace = normalize_annulus(c)
    assert RewriteTrace.from_json(trace.to_json()).steps == trace.steps


def test_dot_export():
    dot = to_dot(choker(1, [1, -1]))
    assert dot.startswith("graph") and "h+" in dot and "h-" in dot and "∂0" in dot


def test_flip_sign_only_changes_sign():
    c = choker(2)
    f = flip_sign(c, 0)
    assert f.vertices[0].sign == -1
    assert f.rotation == c.rotation and f.edges == c.edges


def test_tile_kinds():
    c = choker(1)
    assert tile_kind(c.vertices[0]) == "h"
    ell = lambda p: Corner("elliptic", p, 1)  # noqa: E731
    base = c.vertices[0]
    assert tile_kind(replace(base, corners=(ell(1), ell(2), BOUNDARY_CORNER, BOUNDARY_CORNER))) == "e2"
    assert tile_kind(replace(base, corners=(ell(1), BOUNDARY_CORNER, ell(2), BOUNDARY_CORNER))) == "e2-opposite"
    assert tile_kind(replace(base, corners=(ell(1),) * 4)) == "e4"


def _mixed_sample():
    c = choker(2)
    c, _ = unresolve_extremal(c, 4)
    v = dict(c.vertices)
    v[2] = replace(v[2], corners=(Corner("elliptic", 7, 1), Corner("elliptic", 8, 1), Corner("elliptic", 9, -1), BOUNDARY_CORNER))
    return c._evolve(vertices=v)


def test_eliminate_bad_tiles():
    c = _mixed_sample()
    assert classify_surface(c) == "mixed" and bad_tile_measure(c) == (1, 1)
    out, trace = eliminate_bad_tiles(c)
    assert trace.status == "book-link"
    assert trace.stabilizations == 1
    assert trace.hyperbolic_created[1] == 1 and trace.hyperbolic_destroyed[1] == 1
    assert bad_tile_measure(out) == (0, 0)
    assert replay(c, trace).adjacency_key() == out.adjacency_key()


def test_closed_and_braided_are_reported():
    c = choker(1)
    v = dict(c.vertices)
    ell = lambda p: Corner("elliptic", p, 1)  # noqa: E731
    v[0] = replace(v[0], corners=(ell(1), BOUNDARY_CORNER, ell(2), BOUNDARY_CORNER))
    assert eliminate_bad_tiles(c._evolve(vertices=v))[1].status == "braided"
    v[0] = replace(v[0], corners=(ell(1),) * 4)
    assert eliminate_bad_tiles(c._evolve(vertices=v))[1].status == "closed"


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_single_off_cycle_tile_returns_in_one_rotation(d, seed):
    c = generate_annulus(d, 1, seed)
    (off,) = annulus_status(c)["off_cycle"]
    _, trace = normalize_annulus(c)
    op, args = trace.steps[0]
    assert off in (args["h1"], args["h2"])
    assert annulus_status(rotate(c, args["h1"], args["h2"], args["direction"]))["off_cycle"] == []


def test_generation_is_deterministic_in_seed():
    assert to_json(generate_annulus(3, 2, 42)) == to_json(generate_annulus(3, 2, 42))
    a, b = normalize_annulus(generate_annulus(3, 2, 42)), normalize_annulus(generate_annulus(3, 2, 42))
    assert a[1].to_json() == b[1].to_json()


def test_opposite_signs_without_boundary_tile_rejected():
    c = monkey_saddle_pair(1, -1)
    vertices = dict(c.vertices)
    for t in T.values():
        vertices[t] = replace(c.vertices[H1], sign=1)  # hyperbolic stand-ins
    with pytest.raises(ComplexError):
        rotate(c._evolve(vertices=vertices), H1, H2)


def test_resolve_rejects_standard_tile():
    from booklinks.tiles import resolve_extremal

    with pytest.raises(ComplexError):
        resolve_extremal(choker(1), 2, 1)


def test_stabilize_remove_counts():
    from booklinks.tiles import stabilize_remove

    c = _mixed_sample()
    points = lambda x: {cc.point for v in x.vertices.values() for cc in v.corners if cc.is_elliptic}  # noqa: E731
    # give point 8 a second home so that it must survive
    v = dict(c.vertices)
    v[3] = replace(v[3], corners=(Corner("elliptic", 8, 1),) + v[3].corners[1:])
    c = c._evolve(vertices=v)
    out = stabilize_remove(c, 7, 2)
    assert len(out.hyperbolic()) == len(c.hyperbolic()) - 1
    assert points(out) == {8}
    with pytest.raises(ComplexError):
        stabilize_remove(c, 7, 0)


def test_clean_complexes_are_fixed_points():
    c = choker(2, [1, -1, 1, -1])
    out, trace = eliminate_bad_tiles(c)
    assert out.adjacency_key() == c.adjacency_key() and trace.steps == []
    out, trace = normalize_annulus(c)
    assert out.adjacency_key() == c.adjacency_key() and trace.steps == []


def test_generator_small_cases():
    for seed in range(5):
        c = generate_annulus(1, 0, seed)
        assert check_complex(c) and len(c.hyperbolic()) == 2
        assert annulus_status(c)["off_cycle"] == []
        assert is_choker(normalize_annulus(c)[0])
    c = generate_annulus(2, 0, 5)
    assert len(annulus_status(c)["cycle"]) == 4
    assert sorted(c.vertices[v].boundary for v in c.extremal()) == [0] * 4 + [1] * 4


@given(annuli)
def test_sign_counts_conserved_by_normalization(params):
    c = generate_annulus(*params)
    out, _ = normalize_annulus(c)
    assert out.sign_counts() == c.sign_counts()
