from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from kleinquandle.components import TraceClass, base_point_psl, conjugator_to_base_psl, in_stabilizer_psl
from kleinquandle.errors import (
    BudgetExceeded,
    EmptyWindow,
    HomomorphismFailure,
    MalformedJSON,
    TrivialGamma,
)
from kleinquandle.kleinian import (
    SHRINKING,
    STABLE,
    ElementaryType,
    GroupSpec,
    avatar_correspondence,
    build_quandle,
    canonical_map,
    cayley_ball,
    centralizer_test,
    centralizer_type,
    change_basepoint,
    discreteness_report,
    min_separation,
    preset,
    presets,
    quandle_hom_check,
    report_radii,
    theorem_scope,
)
from kleinquandle.kleinian import _preserves_fixed_set
from kleinquandle.moebius import PSL2Element, SL2Matrix, psl_eq, random_sl2
from kleinquandle.numerics import EPS, QuadraticField

Fi = QuadraticField(-1)

# regression values frozen from the first exact enumeration
FIG8_BALL = [1, 5, 17, 53, 161, 475, 1375]
FIG8_AVATARS = [1, 3, 9, 27, 80, 230, 658]
FIG8_SEP = {4: math.sqrt(2), 5: math.sqrt(2), 6: math.sqrt(2)}
CONTROL_SEP = {4: 0.017900558650500296, 5: 0.017700564962734994, 6: 0.0027907303703510484}


def _psl(rows, F=Fi):
    return PSL2Element(SL2Matrix.from_rows(rows, F))


@pytest.fixture(scope="module")
def fig8_r5():
    return build_quandle(preset("figure8"), "A", 5)


# -- groups and words ----------------------------------------------------------

def test_presets_relators_hold():
    names = [G.name for G in presets()]
    assert names == ["figure8", "picard", "loxodromic", "elliptic", "control"]
    for G in presets():
        assert all(G.check_relators())


def test_picard_involution():
    S = preset("picard").generators[2]
    assert (S * S).is_identity() and not S.is_identity()


def test_word_parsing_round_trip():
    G = preset("figure8")
    assert G.parse_word("AbA") == (1, -2, 1)
    assert G.parse_word("1,-2,1") == (1, -2, 1)
    assert G.parse_word([2, -1]) == (2, -1)
    assert G.parse_word("") == () and G.parse_word("1") == ()
    assert G.format_word((1, -2, 1)) == "AbA" and G.format_word(()) == "1"
    for bad in ("AxB", "0", "3", "1,,2"):
        with pytest.raises(MalformedJSON):
            G.parse_word(bad)


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("nope")


def test_mixed_generator_fields_rejected():
    with pytest.raises(Exception):
        GroupSpec("bad", [_psl([[1, 1], [0, 1]]), _psl([[1, 1], [0, 1]], QuadraticField(-3))])


# -- Cayley balls --------------------------------------------------------------

def test_ball_radius_zero():
    ball = cayley_ball(preset("figure8"), 0)
    assert len(ball) == 1 and ball[0].value.is_identity() and ball[0].word == ()


def test_figure8_ball_sizes():
    G = preset("figure8")
    ball = cayley_ball(G, 6)
    sizes = [sum(1 for m in ball if len(m.word) <= r) for r in range(7)]
    assert sizes == FIG8_BALL
    assert sizes[2] == 17


def test_ball_shortlex_and_values():
    G = preset("figure8")
    ball = cayley_ball(G, 3)
    lengths = [len(m.word) for m in ball]
    assert lengths == sorted(lengths)
    assert [G.format_word(m.word) for m in ball[:5]] == ["1", "A", "a", "B", "b"]
    for m in ball:
        assert m.value == G.evaluate(m.word)
    assert len({m.value for m in ball}) == len(ball)


def test_ball_monotone_and_deterministic():
    G = preset("picard")
    b2, b3 = cayley_ball(G, 2), cayley_ball(G, 3)
    assert [m.word for m in b3[: len(b2)]] == [m.word for m in b2]
    assert [m.word for m in cayley_ball(G, 3)] == [m.word for m in b3]


def test_cyclic_ball():
    G = preset("loxodromic")
    ball = cayley_ball(G, 3)
    assert len(ball) == 7
    for m in ball:
        k = sum(m.word)
        assert m.value == _psl([[Fraction(2) ** k, 0], [0, Fraction(2) ** -k]])


def test_finite_group_ball_saturates():
    assert len(cayley_ball(preset("elliptic"), 5)) == 2


def test_ball_cap_and_negative_radius():
    with pytest.raises(BudgetExceeded):
        cayley_ball(preset("figure8"), 4, cap=100)
    with pytest.raises(ValueError):
        cayley_ball(preset("figure8"), -1)


def test_float_ball_matches_exact():
    G = preset("figure8")
    assert len(cayley_ball(G.to_float(), 4)) == FIG8_BALL[4]


# -- centralisers and quandles ---------------------------------------------------

def test_centralizer_examples():
    G = preset("figure8")
    A, B = G.generators
    assert centralizer_test(A, A ** 3)
    assert not centralizer_test(A, B)
    T1, Ti, _ = preset("picard").generators
    assert centralizer_test(T1, Ti)


def test_abelian_quandle_is_a_point():
    G = GroupSpec("T1", [_psl([[1, 1], [0, 1]])])
    for r in range(4):
        Q = build_quandle(G, "A", r)
        assert len(Q) == 1
    (img, comp), = canonical_map(Q)
    assert img == G.generators[0] and str(comp) == "[2]"
    assert quandle_hom_check(Q, 20)["passed"]
    rep = discreteness_report(Q)
    assert rep.min_separation[-1] == math.inf and rep.verdict == STABLE


def test_trivial_gamma_rejected():
    with pytest.raises(TrivialGamma):
        build_quandle(preset("figure8"), "", 2)
    with pytest.raises(TrivialGamma):
        build_quandle(preset("elliptic"), "AA", 2)
    with pytest.raises(TrivialGamma):
        centralizer_type(preset("figure8"), "Aa", 2)


def test_figure8_counts(fig8_r5):
    assert fig8_r5.counts == FIG8_AVATARS[:6]
    Q6 = build_quandle(preset("figure8"), "A", 6)
    assert Q6.counts == FIG8_AVATARS
    assert all(a <= b for a, b in zip(Q6.counts, Q6.counts[1:]))


def test_avatars_distinct_and_in_component(fig8_r5):
    assert len(set(fig8_r5.avatars)) == len(fig8_r5.avatars)
    comps = {str(c) for _, c in canonical_map(fig8_r5)}
    assert comps == {"[2]"}


def test_avatar_correspondence_small():
    Q = build_quandle(preset("figure8"), "A", 3)
    rep = avatar_correspondence(Q)
    assert rep == {"checked": 1431, "mismatches": 0, "witness": None}


def test_avatar_correspondence_picard():
    Q = build_quandle(preset("picard"), "T", 2)
    assert avatar_correspondence(Q)["mismatches"] == 0


def test_hom_check_and_corrupted_anchor(fig8_r5):
    assert quandle_hom_check(fig8_r5, 500, random.Random(0))["passed"]
    with pytest.raises(HomomorphismFailure) as e:
        quandle_hom_check(fig8_r5, 500, random.Random(0), anchor=fig8_r5.gamma.inv())
    assert e.value.witness is not None


def test_loxodromic_images_in_trace_component():
    Q = build_quandle(preset("loxodromic"), "A", 4)
    assert len(Q) == 1
    assert {str(c) for _, c in canonical_map(Q)} == {str(TraceClass.of(Fi(Fraction(5, 2))))}


# -- discreteness ----------------------------------------------------------------

def test_report_radii():
    assert report_radii(2) == [0, 1, 2]
    assert report_radii(4) == [2, 3, 4]
    assert report_radii(5) == [4, 5]
    assert report_radii(6) == [4, 5, 6]
    assert report_radii(8) == [6, 7, 8]


def test_min_separation_basics():
    assert min_separation([]) == (math.inf, None)
    I = PSL2Element.identity(Fi)
    T = _psl([[1, 1], [0, 1]])
    d, pair = min_separation([I, T, _psl([[-1, 0], [0, -1]])])
    # +I and -I are the same point of PSL
    assert d == 0.0 and pair == (0, 2)
    assert min_separation([I, T])[0] == pytest.approx(1.0)


def test_figure8_stable():
    Q = build_quandle(preset("figure8"), "A", 6)
    rep = discreteness_report(Q, 20, radii=[4, 5, 6])
    assert rep.verdict == STABLE
    for r, s in zip(rep.radii, rep.min_separation):
        assert s == pytest.approx(FIG8_SEP[r], abs=1e-12)
    assert rep.window_counts == [70, 148, 212]
    assert rep.witnesses[0] == ["1", "BabA"]


def test_control_shrinking():
    Q = build_quandle(preset("control"), "A", 6)
    rep = discreteness_report(Q, 20, radii=[4, 5, 6])
    assert rep.verdict == SHRINKING
    for r, s in zip(rep.radii, rep.min_separation):
        assert s == pytest.approx(CONTROL_SEP[r], rel=1e-9)
    assert rep.min_separation[0] / rep.min_separation[-1] >= 2
    assert rep.window_counts == [81, 243, 727]


def test_loxodromic_stable():
    Q = build_quandle(preset("loxodromic"), "A", 6)
    rep = discreteness_report(Q, 20, radii=[4, 5, 6])
    assert rep.verdict == STABLE and rep.min_separation == [math.inf] * 3


def test_empty_window_and_bad_radii(fig8_r5):
    with pytest.raises(EmptyWindow):
        discreteness_report(fig8_r5, window=0.5)
    with pytest.raises(ValueError):
        discreteness_report(fig8_r5, radii=[5, 6])


def test_report_dict_is_json_ready():
    Q = build_quandle(preset("loxodromic"), "A", 3)
    d = discreteness_report(Q).as_dict()
    assert d["min_separation"] == [None, None, None]
    assert "not a proof" in d["note"]


# -- centraliser types -------------------------------------------------------------

def test_centralizer_types():
    assert centralizer_type(preset("figure8"), "A", 4)[0] is ElementaryType.PARABOLIC
    t, counts = centralizer_type(preset("loxodromic"), "A", 4)
    assert t is ElementaryType.HYPERBOLIC and counts == [1, 3, 5, 7, 9]
    t, counts = centralizer_type(preset("elliptic"), "A", 4)
    assert t is ElementaryType.ELLIPTIC and counts == [1, 2, 2, 2, 2]
    with pytest.raises(ValueError):
        centralizer_type(preset("elliptic"), "A", 0)


def test_fixed_set_guard():
    # the guard behind NotElementaryEvidence: B moves the fixed point of A
    G = preset("figure8")
    A, B = G.generators
    assert _preserves_fixed_set(A, [A ** 2, A.inv()], EPS)
    assert not _preserves_fixed_set(A, [B], EPS)
    L = preset("loxodromic").generators[0]
    swap = _psl([[0, -1], [1, 0]])
    # swapping 0 and infinity keeps the fixed set of diag(2, 1/2)
    assert _preserves_fixed_set(L, [swap], EPS)


def test_theorem_scope():
    G = preset("figure8")
    assert theorem_scope(G, G.generators[0], ElementaryType.PARABOLIC) == "case1"
    C = preset("control")
    assert theorem_scope(C, C.generators[0], None) == "case1-hypothesis-unverified"
    L = preset("loxodromic")
    assert theorem_scope(L, L.generators[0], ElementaryType.HYPERBOLIC) == "case2"
    E = preset("elliptic")
    assert theorem_scope(E, E.generators[0], ElementaryType.ELLIPTIC) == "outside-theorem-scope"


# -- change of base point ------------------------------------------------------------

def test_change_basepoint_identity():
    Q = build_quandle(preset("figure8"), "A", 3)
    Q2 = change_basepoint(Q, PSL2Element.identity(QuadraticField(-3)))
    assert Q2.counts == Q.counts and Q2.avatars == Q.avatars


def test_change_basepoint_counts_invariant():
    F3 = QuadraticField(-3)
    rng = random.Random(11)
    Q = build_quandle(preset("figure8"), "A", 4)
    for _ in range(3):
        f = PSL2Element(random_sl2(rng, F3))
        Q2 = change_basepoint(Q, f)
        assert Q2.counts == Q.counts
        assert psl_eq(Q2.gamma, f * Q.gamma * f.inv())


def test_change_basepoint_to_base_point():
    # move a loxodromic gamma to f_tau; its sampled centraliser lies in H_tau
    F = QuadraticField(-1)
    g = PSL2Element(SL2Matrix.from_rows([[3, 1], [Fraction(-5, 2), Fraction(-1, 2)]], F))
    G = GroupSpec("hyp", [g])
    tau, h = conjugator_to_base_psl(g)
    f = h  # f_tau . h = g, so h g h^-1 = f_tau
    Q = build_quandle(G, "A", 3)
    Q2 = change_basepoint(Q, f)
    assert Q2.gamma == base_point_psl(tau)
    t, _ = centralizer_type(Q2.group, "A", 3)
    assert t is ElementaryType.HYPERBOLIC
    assert all(in_stabilizer_psl(m.value, tau) for m in Q2.ball if centralizer_test(Q2.gamma, m.value))
