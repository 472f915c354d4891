import json
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from metacyclic import catalog
from metacyclic.homology import (HomologyError, PolygonWord, chain_form, check_relation,
                                 formal_conjugation_check, hyperelliptic_matrix, intersection_form,
                                 level_m_member, load_word_file, order_on_homology, polygon_curves,
                                 polygon_form, preserves, rotation_matrix, spectral_lower_bound,
                                 symmetric_word, transvection, word_matrix)
from metacyclic.intmat import Matrix, charpoly, cyclotomic, cyclotomic_part


def dual_chord_form(g):
    """Edge-class form of the symmetric 4g-gon from its 2g diameters.

    The chord through the midpoints of the two sides labelled i meets every
    other such chord once at the centre, so chords pair to +1 for i < j.  Each
    side crosses only its own chord, which makes the edge form -D^-1.
    """
    n = 2 * g
    d = sympy.Matrix(n, n, lambda i, j: 1 if i < j else (-1 if i > j else 0))
    return -d.inv()


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_polygon_form_matches_dual_chords(g):
    form = polygon_form(g)
    assert sympy.Matrix(form.matrix.to_json()) == dual_chord_form(g)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_polygon_form_alternates(g):
    form = polygon_form(g)
    for i in range(2 * g):
        for j in range(i + 1, 2 * g):
            assert form.matrix[i, j] == (-1) ** (j - i + 1)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_curve_chain_meets_only_neighbours(g):
    form = polygon_form(g)
    curves = polygon_curves(g)
    n = 2 * g
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            value = form.pair(curves[f"c{i}"], curves[f"c{j}"])
            if j == i + 1 or (i == 1 and j == n):
                assert abs(value) == 1
            else:
                assert value == 0


def test_torus():
    form = intersection_form(PolygonWord.parse("a b a' b'"))
    assert form.pair(form.basis("a"), form.basis("b")) == 1
    t = transvection(form, form.basis("a"), 1)
    assert t.apply(form.basis("b")) == (1, 1)
    assert t.apply(form.basis("a")) == (1, 0)
    assert transvection(form, form.basis("a"), 0).is_identity()


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_standard_word_gives_standard_form(g):
    text = " ".join(f"a{i} b{i} a{i}' b{i}'" for i in range(1, g + 1))
    form = intersection_form(PolygonWord.parse(text))
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            a_i, b_j = form.basis(f"a{i}"), form.basis(f"b{j}")
            assert form.pair(a_i, b_j) == (1 if i == j else 0)
            assert form.pair(form.basis(f"a{i}"), form.basis(f"a{j}")) == 0


@given(st.integers(2, 4), st.integers(0, 15))
def test_form_invariant_under_cyclic_rotation(g, shift):
    word = symmetric_word(g)
    letters = word.letters[shift % len(word.letters):] + word.letters[:shift % len(word.letters)]
    rotated = intersection_form(PolygonWord(letters))
    base = intersection_form(word)
    for x in base.labels:
        for y in base.labels:
            assert rotated.pair(rotated.basis(x), rotated.basis(y)) == base.pair(base.basis(x), base.basis(y))


def test_bad_words():
    with pytest.raises(HomologyError):
        PolygonWord.parse("a b a b")
    with pytest.raises(HomologyError):
        PolygonWord.parse("a b a'")
    with pytest.raises(HomologyError):
        PolygonWord.parse("a a' b b'")


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_rotation(g):
    rot = rotation_matrix(g)
    form = polygon_form(g)
    assert preserves(rot, form)
    res = order_on_homology(rot)
    assert res.kind == "finite" and res.order == 4 * g
    assert rot ** (2 * g) == -Matrix.identity(2 * g)
    for i in range(2 * g - 1):
        assert rot.apply(form.basis(f"a{i + 1}")) == form.basis(f"a{i + 2}")
    assert rot.apply(form.basis(f"a{2 * g}")) == tuple(-x for x in form.basis("a1"))


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_penner_word_relations(g):
    form = polygon_form(g)
    mf = word_matrix(catalog.penner_word(g), form, polygon_curves(g))
    rot = rotation_matrix(g)
    assert preserves(mf, form)
    assert check_relation(mf, rot, -1)
    assert check_relation(mf, rot ** 2, 1)
    assert order_on_homology(mf).kind == "infinite"
    assert spectral_lower_bound(mf).exceeds(1)


def test_flipped_penner_word_breaks_relation():
    word = catalog.penner_word(2)
    word[1] = (word[1][0], -word[1][1])
    mf = word_matrix(word, polygon_form(2), polygon_curves(2))
    assert not check_relation(mf, rotation_matrix(2), -1)


def test_check_relation_trivial():
    m = word_matrix(catalog.penner_word(3), polygon_form(3), polygon_curves(3))
    assert check_relation(m, Matrix.identity(6), 1)
    assert word_matrix([], polygon_form(2), polygon_curves(2)).is_identity()


def test_formal_check():
    form = polygon_form(2)
    curves = polygon_curves(2)
    res = formal_conjugation_check(["c1", "c3"], {"c1": 1, "c3": -1}, {"c1": "c3", "c3": "c1"}, -1)
    assert res.status == "certified"
    mf = word_matrix([("c1", 1), ("c3", -1)], form, curves)
    assert check_relation(mf, rotation_matrix(2) ** 2, -1)
    meets = [("c1", "c2")]
    res = formal_conjugation_check(["c1", "c2"], {"c1": 1, "c2": -1}, {"c1": "c2", "c2": "c1"}, -1, meets)
    assert res.status == "not-applicable"


@pytest.mark.parametrize("g", [2, 4])
def test_multitwist_family_formal_and_homology_agree(g):
    out = catalog._multitwist_fixture(g)
    assert out.passed, out.details


def test_order_examples():
    assert order_on_homology(Matrix.identity(4)).order == 1
    assert order_on_homology(-Matrix.identity(4)).order == 2
    unipotent = Matrix([[1, 1], [0, 1]])
    assert order_on_homology(unipotent).kind == "infinite"
    assert order_on_homology(rotation_matrix(2)).order == 8


def test_spectral_bound_examples():
    assert spectral_lower_bound(Matrix.identity(4)).value == 1
    b = spectral_lower_bound(Matrix([[2, 1], [1, 1]]), steps=4)
    assert b.power == 4 and b.exceeds(2)


def _random_word(rng, g, length):
    labels = [f"c{i}" for i in range(1, 2 * g + 1)]
    return [(rng.choice(labels), rng.choice([-2, -1, 1, 2])) for _ in range(length)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_charpoly_and_spectral_bound_against_sympy(seed, g):
    rng = random.Random(seed)
    m = word_matrix(_random_word(rng, g, 5), polygon_form(g), polygon_curves(g))
    x = sympy.Symbol("x")
    ref = sympy.Matrix(m.to_json()).charpoly(x).all_coeffs()[::-1]
    assert charpoly(m) == [int(c) for c in ref]
    radius = max(abs(r) for r in sympy.Poly(ref[::-1], x).sqf_part().nroots(n=20, maxsteps=200))
    bound = spectral_lower_bound(m)
    assert float(bound.approx) <= float(radius) + 1e-9
    found, rest = cyclotomic_part(charpoly(m))
    expect_finite = len(rest) == 1
    res = order_on_homology(m)
    if res.kind == "finite":
        assert (m ** res.order).is_identity() and expect_finite


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(-4, 4), st.integers(-4, 4))
def test_transvection_laws(v, p, q):
    form = polygon_form(2)
    tp, tq = transvection(form, v, p), transvection(form, v, q)
    assert tp @ tq == transvection(form, v, p + q)
    assert preserves(tp, form)
    assert tp.apply(v) == tuple(v)
    rot = rotation_matrix(2)
    assert rot @ tp @ rot.inverse() == transvection(form, rot.apply(v), p)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_level_two_is_closed(seed):
    rng = random.Random(seed)
    form = chain_form(3)
    classes = {lab: form.basis(lab) for lab in form.labels}
    gens = [transvection(form, v, 2) for v in classes.values()] + [hyperelliptic_matrix(form.matrix.dim)]
    prod = Matrix.identity(form.matrix.dim)
    for _ in range(6):
        prod = prod @ rng.choice(gens) ** rng.choice([-1, 1])
    # -I is not congruent to I mod 3, but it is mod 2
    assert level_m_member(prod, 2)
    assert preserves(prod, form)


def test_level_examples():
    doc = json.loads(json.dumps(catalog.penner_squares(3)))
    form, mat = load_word_file(doc)
    assert level_m_member(mat, 2)
    assert check_relation(mat, hyperelliptic_matrix(form.matrix.dim), 1)
    assert not level_m_member(rotation_matrix(2), 2)
    assert level_m_member(Matrix.identity(5), 7)


def test_chain_form_shape():
    form = chain_form(3)
    assert len(form.labels) == 7
    m = sympy.Matrix(form.matrix.to_json())
    assert m.rank() == 6


def test_cyclotomic_polynomials_match_sympy():
    x = sympy.Symbol("x")
    for d in range(1, 40):
        assert list(cyclotomic(d)) == [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs()[::-1]]


def test_cyclotomic_split():
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.expand(sympy.cyclotomic_poly(6, x) ** 2 * sympy.cyclotomic_poly(1, x) * (x**2 - 3 * x + 1)), x)
    found, rest = cyclotomic_part([int(c) for c in p.all_coeffs()[::-1]])
    assert found == {1: 1, 6: 2}
    assert rest == [1, -3, 1]
