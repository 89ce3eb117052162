import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamnt.hamming import (
    HammingAut,
    all_vertices,
    apply,
    composition,
    diag_wreath_elements,
    distance,
    format_vertex,
    full_diag_wreath,
    generate_auts,
    is_closed,
    multiplicities,
    neighbours,
    nu,
    num_profile,
    parse_vertex,
    support_weight,
    vertex_from_index,
    vertex_index,
    weight,
)
from hamnt.limits import CapacityError, ParseError
from hamnt.perm import Permutation, identity

import oracles


def perms(n):
    return st.permutations(list(range(n))).map(lambda xs: Permutation(tuple(xs)))


def vertices(m, q):
    return st.tuples(*[st.integers(0, q - 1)] * m)


@st.composite
def auts(draw, m, q):
    cells = tuple(draw(perms(q)) for _ in range(m))
    return HammingAut(cells, draw(perms(m)))


def test_distance_and_nu():
    assert distance((0, 1, 2), (0, 2, 2)) == 1
    assert nu((0, 1, 2), 1, 0) == (0, 0, 2)
    with pytest.raises(IndexError):
        nu((0, 1), 2, 0)
    with pytest.raises(ValueError):
        nu((0, 1), 0, 3, q=3)
    with pytest.raises(ValueError):
        distance((0,), (0, 1))


def test_composition_and_num():
    a = (0, 0, 1, 1, 1)
    assert composition(a) == {(0, 2), (1, 3)}
    assert num_profile(a) == ((3, 1), (2, 1))
    assert num_profile((0, 1, 2)) == ((1, 3),)
    assert multiplicities((2, 0, 2, 1, 2)) == (3, 1, 1)


def test_support_and_weight():
    assert support_weight((0, 2, 0, 1)) == (frozenset({1, 3}), 2)
    assert weight((1, 1), base=(1, 0)) == 1


def test_neighbours_count():
    a = (0, 1, 2)
    nb = list(neighbours(a, 3))
    assert len(nb) == 3 * 2
    assert all(distance(a, b) == 1 for b in nb)


def test_vertex_index_is_lexicographic():
    V = all_vertices(3, 3)
    assert V == sorted(V)
    assert [vertex_index(v, 3) for v in V] == list(range(27))
    assert all(vertex_from_index(i, 3, 3) == v for i, v in enumerate(V))


def test_all_vertices_cap(monkeypatch):
    monkeypatch.setenv("HAMNT_MAX_VERTICES", "10")
    with pytest.raises(CapacityError):
        all_vertices(3, 3)


@pytest.mark.parametrize("text, expected", [
    ("0,1,2", (0, 1, 2)),
    ("0^2,1^3", (0, 0, 1, 1, 1)),
    (" 2 ,0^1", (2, 0)),
])
def test_parse_vertex(text, expected):
    assert parse_vertex(text) == expected
    assert parse_vertex(format_vertex(expected)) == expected


@pytest.mark.parametrize("text, kw", [("0,x", {}), ("0,1", {"m": 3}), ("0,3", {"q": 3}), ("0^", {})])
def test_parse_vertex_errors(text, kw):
    with pytest.raises(ParseError):
        parse_vertex(text, **kw)


def test_action_example():
    x = HammingAut((Permutation((1, 0)), identity(2)), Permutation((1, 0)))
    assert x((0, 0)) == (0, 1)


@given(auts(4, 3), vertices(4, 3))
def test_action_agrees_with_oracle(x, a):
    assert apply(x, a) == oracles.act([c.images for c in x.cells], x.cols.images, a)


@given(auts(4, 3), auts(4, 3), vertices(4, 3))
def test_product_is_left_to_right(x, y, a):
    assert (x * y)(a) == y(x(a))
    assert x.inverse()(x(a)) == a


@given(auts(4, 3), vertices(4, 3), vertices(4, 3))
def test_automorphisms_are_isometries(x, a, b):
    assert distance(x(a), x(b)) == distance(a, b)


@given(auts(4, 3), vertices(4, 3), st.integers(0, 3), st.integers(0, 2))
def test_nu_action_identity(x, a, i, s):
    # moving entry i to s then applying x equals applying x then changing
    # the image position of i to the image of s
    target = x.cols.images[i]
    assert x(nu(a, i, s)) == nu(x(a), target, x.cells[i].images[s])


@given(perms(3), perms(4), vertices(4, 3))
def test_num_invariance(h, sigma, a):
    x = HammingAut((h,) * 4, sigma)
    assert num_profile(x(a)) == num_profile(a)
    assert multiplicities(x(a)) == multiplicities(a)


@given(vertices(4, 3), vertices(4, 3), vertices(4, 3))
def test_metric_axioms(a, b, c):
    assert distance(a, b) == distance(b, a)
    assert (distance(a, b) == 0) == (a == b)
    assert distance(a, c) <= distance(a, b) + distance(b, c)


def test_semidirect_relation_exhaustive():
    m, q = 3, 2
    cells_all = list(itertools.product(sorted(Permutation(p) for p in itertools.permutations(range(q))), repeat=m))
    V = all_vertices(m, q)
    for sig in itertools.permutations(range(m)):
        s = HammingAut.column(Permutation(sig), q)
        inv = s.inverse()
        for cells in cells_all:
            g = HammingAut(cells, identity(m))
            lhs = inv * g * s
            rhs = HammingAut(tuple(cells[sig.index(i)] for i in range(m)), identity(m))
            assert all(lhs(a) == rhs(a) for a in V)
            other = s * g * inv
            rhs2 = HammingAut(tuple(cells[sig[i]] for i in range(m)), identity(m))
            assert all(other(a) == rhs2(a) for a in V)


def test_diag_wreath_order_and_closure():
    G = generate_auts(full_diag_wreath(3, 3), 3, 3)
    assert len(G) == 36
    assert set(G) == set(diag_wreath_elements(3, 3))
    assert is_closed(G)
    assert all(x.is_diagonal() for x in G)
    assert not is_closed(G[:5])


def test_diag_wreath_matches_raw_enumeration():
    raw = {(tuple(c), s) for c, s in oracles.diag_wreath(3, 2)}
    got = {(tuple(c.images for c in x.cells), x.cols.images) for x in diag_wreath_elements(3, 2)}
    assert got == raw


def test_mismatched_autos():
    with pytest.raises(ValueError):
        HammingAut.identity(2, 2) * HammingAut.identity(2, 3)
    with pytest.raises(ValueError):
        HammingAut((identity(2),), identity(2))
