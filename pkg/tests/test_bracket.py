import random

import pytest

from linkcx.bracket import (all_state_counts, bracket, check_span_theorem,
                            check_state_inequality, classical_oracle,
                            normalized_bracket, smooth, span, state_term)
from linkcx.diagram import braid_code, draw_local, mirror
from linkcx.errors import CrossingCapError, DiagramError
from linkcx.examples import example, hopf_code, trefoil_code, unknot_code
from linkcx.laurent import Laurent
from linkcx.twocomplex import build_disc

LOOP = Laurent.loop_factor()


def test_unknot_and_hopf_values():
    assert bracket(example("unknot_local").diagram) == Laurent.one()
    hopf = example("hopf_local").diagram
    assert bracket(hopf) == Laurent({4: -1, -4: -1})
    assert classical_oracle(hopf_code()) == Laurent({4: -1, -4: -1})
    assert classical_oracle(unknot_code()) == Laurent.one()


def test_state_terms():
    unknot = example("unknot_local").diagram
    assert state_term(unknot, ()) == Laurent.one()
    hopf = example("hopf_local").diagram
    both = frozenset(hopf.crossings)
    assert state_term(hopf, both) == LOOP * Laurent.A(2)
    assert smooth(hopf, both).count() == 2
    assert smooth(hopf, ()).count() == 2
    one = frozenset(list(hopf.crossings)[:1])
    assert smooth(hopf, one).count() == 1


def test_trefoil_state_counts_and_span():
    d = example("trefoil_right").diagram
    full, empty = all_state_counts(d)
    assert sorted((full, empty)) == [2, 3]
    f = bracket(d)
    assert span(f) == 12
    # equality cases of the two bounds
    assert 4 * 3 == 4 * (1 - 1) + span(f)
    assert full + empty == 3 + 2 * 1


def test_bracket_matches_oracle_on_local_links():
    cx = build_disc()
    for code in (trefoil_code("left"), trefoil_code("right"), hopf_code(),
                 unknot_code()):
        assert bracket(draw_local(cx, "F", code)) == classical_oracle(code)


def test_bracket_matches_oracle_on_random_braids():
    cx = build_disc()
    rng = random.Random(42)
    for _ in range(20):
        n = rng.randint(1, 8)
        strands = rng.randint(2, 4)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1)
                for _ in range(n)]
        code = braid_code(word, strands)
        d = draw_local(cx, "F", code)
        assert bracket(d) == classical_oracle(code), word


def test_mirror_duality():
    for name in ("trefoil_left", "hopf_local", "torus_link", "annulus_link"):
        d = example(name).diagram
        assert bracket(mirror(d)) == bracket(d).subs_A_inverse()


def test_normalized_bracket_kills_kinks():
    from linkcx import moves as mv
    d = example("unknot_local").diagram
    n0 = normalized_bracket(d)
    assert n0 == Laurent.one()
    for kind in (mv.MoveKind.M1P, mv.MoveKind.M1M):
        d2 = mv.apply(d, kind, mv.candidate_sites(d, kind)[0])
        assert normalized_bracket(d2) == n0


def test_single_smoothing_change_lemma():
    # |L, C + c| differs from |L, C| by exactly one
    rng = random.Random(7)
    for name in ("trefoil_left", "hopf_local", "annulus_link"):
        d = example(name).diagram
        ids = sorted(d.crossings)
        for _ in range(10):
            state = frozenset(c for c in ids if rng.random() < 0.5)
            base = smooth(d, state).count()
            for c in ids:
                if c in state:
                    continue
                grown = smooth(d, state | {c}).count()
                assert abs(grown - base) == 1


def test_theorem_checks_on_examples():
    for name, n in [("trefoil_left", None), ("hopf_local", None),
                    ("torus_link", None), ("moebius_link", None),
                    ("annulus_link", None), ("Ln", 2), ("Kn", 1)]:
        d = example(name, n).diagram
        assert check_span_theorem(d)
        assert check_state_inequality(d)


def test_crossing_cap():
    d = example("trefoil_left").diagram
    with pytest.raises(CrossingCapError):
        bracket(d, max_crossings=2)


def test_empty_diagram_has_no_bracket():
    cx = build_disc()
    d = draw_local(cx, "F", unknot_code().__class__(()))
    with pytest.raises(DiagramError):
        bracket(d)


def test_transits_do_not_change_bracket():
    # K(1) weaves like a positive trefoil; its ridge transits are invisible
    # to the state sum
    assert bracket(example("Kn", 1).diagram) == bracket(
        example("trefoil_right").diagram)


def test_mirror_duality_survives_moves():
    from linkcx import moves as mv
    d = example("annulus_link").diagram
    fuzzed, _trace = mv.fuzz(d, 20, seed=13, max_crossings=6, max_transits=12)
    assert bracket(mirror(fuzzed)) == bracket(fuzzed).subs_A_inverse()
