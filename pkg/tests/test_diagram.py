import pytest
from hypothesis import given

from booklinks import jones, jones_with_axis, kauffman_bracket, linking_with_axis, parse_word, to_diagram, word
from booklinks.diagram import CrossingCapExceeded, format_pd, parse_pd, signed_profile
from conftest import DATA
from oracles import FIGURE_EIGHT_PD, TREFOIL_PD, naive_bracket, naive_knot_jones, pd_components
from wordgen import words

FIG8 = {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
TREFOIL_RIGHT = {1: 1, 3: 1, 4: -1}


def test_hand_codes_through_oracle():
    assert naive_knot_jones(TREFOIL_PD) == TREFOIL_RIGHT
    assert naive_knot_jones(FIGURE_EIGHT_PD) == FIG8


def test_word_jones_matches_hand_codes():
    assert jones(word(2, "s1 s1 s1")).terms == naive_knot_jones(TREFOIL_PD)
    assert jones(word(3, "s1 S2 s1 S2")).terms == naive_knot_jones(FIGURE_EIGHT_PD)


def test_mirror_inverts_variable():
    right, left = jones(word(2, "s1 s1 s1")), jones(word(2, "S1 S1 S1"))
    assert left.terms == {-e: c for e, c in right.terms.items()}


def test_pd_files_parse():
    for name, crossings in (("trefoil.pd", TREFOIL_PD), ("figure8.pd", FIGURE_EIGHT_PD)):
        d = parse_pd((DATA / name).read_text())
        assert d.crossings == crossings
        assert kauffman_bracket(d).terms == naive_bracket(crossings)


@given(words(max_events=10))
def test_bracket_matches_naive_resolver(w):
    d = to_diagram(w)
    if d.n_crossings > 8:
        return
    assert kauffman_bracket(d).terms == naive_bracket(d.crossings, d.free_loops)
    assert d.n_components == pd_components(d.crossings, d.free_loops)


@given(words(max_events=10))
def test_pd_text_round_trip(w):
    d = to_diagram(w, include_axis=True)
    back = parse_pd(format_pd(d))
    assert back.crossings == d.crossings
    assert back.signs == d.signs
    assert back.free_loops == d.free_loops


def test_axis_adds_one_component():
    d0, d1 = to_diagram(word(1)), to_diagram(word(1), include_axis=True)
    assert d1.n_components == d0.n_components + 1
    # unknot around the binding once is a Hopf link
    assert jones_with_axis(word(1)) == jones(word(2, "s1 s1"))
    # a plat unknot misses the binding: two-component unlink
    assert jones_with_axis(word(0, "u1 n1")) == jones(word(0, "u1 n1 u1 n1"))


def test_linking_and_signed_profile():
    assert linking_with_axis(word(3, "s1 S2 s1 S2")) == 3
    assert linking_with_axis(word(0, "u1 u3 s2 S1 s2 S1 n2 n1")) == 0
    assert set(signed_profile(word(2, "s1 s1"))) == {2}


def test_crossing_cap():
    w = word(2, " ".join(["s1"] * 9))
    with pytest.raises(CrossingCapExceeded):
        jones(w, cap=8)
    assert jones(w, cap=9) is not None


def test_corpus_jones_is_knot_type_data():
    fig8 = [parse_word((DATA / f).read_text()) for f in ("fig8_plat.blw", "fig8_b1.blw", "fig8_b2.blw", "fig8_3braid.blw")]
    assert {jones(w).key() for w in fig8} == {tuple(sorted(FIG8.items()))}


def _with_axis_as_braid(n, body):
    # the binding becomes an extra strand looping once around all n strands
    loop = [f"s{i}" for i in range(n, 0, -1)] + [f"s{i}" for i in range(1, n + 1)]
    return word(n + 1, body + " " + " ".join(loop))


@pytest.mark.parametrize("n, body", [(1, ""), (2, "s1 s1 s1"), (3, "s2 s1 s1 s1"), (3, "s1 S2 s1 S2"), (2, "s1"), (3, "s1 s2")])
def test_axis_diagram_matches_braid_construction(n, body):
    assert jones_with_axis(word(n, body)) == jones(_with_axis_as_braid(n, body))
