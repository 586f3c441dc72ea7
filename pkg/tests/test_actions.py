import itertools
from fractions import Fraction
from functools import reduce

import pytest

from autbound.actions import (
    find_generating_vector,
    genus_of_action,
    macbeath_genus,
    min_genus_bounded,
)
from autbound.errors import SizeCap, UnsupportedSignature
from autbound.groups import generate
from autbound.groupspec import construct
from autbound.signature import Signature, coset_action_signature, parse_signature

S = parse_signature


def right_regular(G, vec):
    """Permutation of the elements induced by right multiplication by each vector entry."""
    return [tuple(G.table[x][a] for x in range(G.n)) for a in vec]


def brute_least_vector(G, sig):
    pools = [[x for x in range(G.n) if G.orders[x] == m] for m in sig.periods]
    for vec in itertools.product(*pools):  # product order is lexicographic
        if reduce(G.mul, vec, G.identity) == G.identity and len(generate(G, vec)) == G.n:
            return vec
    return None


@pytest.mark.parametrize(
    "spec,sig,genus",
    [
        ("C 7 : C 3 @ 2", "(0;3,3,7)", 3),
        ("C 5 x C 5", "(0;5,5,5)", 6),
        ("MAT 5 : C 3", "(0;3,3,5)", 6),
        ("GL2 3", "(0;2,3,8)", 2),
        ("Fermat 4", "(0;2,3,8)", 3),
        ("C 11 : C 5 @ 3", "(0;5,5,5)", 12),
    ],
)
def test_found_vectors_close_the_loop(spec, sig, genus):
    G = construct(spec)
    sig = S(sig)
    vec = find_generating_vector(G, sig)
    assert vec is not None and vec.verify()
    assert genus_of_action(G, sig) == genus
    # the kernel is a surface group: its coset action has no fixed points
    kernel = coset_action_signature(sig, right_regular(G, vec.elements), G.n)
    assert kernel == Signature(genus, ())


def test_no_vector_for_c4():
    G = construct("C 4")
    assert find_generating_vector(G, S("(0;2,2,2)", hyperbolic=False)) is None
    assert brute_least_vector(G, S("(0;2,2,2)", hyperbolic=False)) is None


@pytest.mark.parametrize(
    "spec,sig",
    [
        ("C 7 : C 3 @ 2", "(0;3,3,7)"),
        ("Sym 4", "(0;2,3,4)"),
        ("Alt 4", "(0;2,3,3)"),
        ("Alt 4", "(0;3,3,3,3)"),
        ("C 3 x C 3", "(0;3,3,3)"),
        ("Sym 3", "(0;2,2,2,2)"),
        ("C 5 : C 4 @ 2", "(0;2,4,5)"),
        ("Q8", "(0;4,4,4)"),
        ("Q8", "(0;2,4,4)"),
        ("C 2 x C 2 x C 2", "(0;2,2,2,2,2)"),
    ],
)
def test_search_returns_lexicographically_least_vector(spec, sig):
    G = construct(spec)
    sig = S(sig, hyperbolic=False)
    vec = find_generating_vector(G, sig)
    least = brute_least_vector(G, sig)
    assert (vec.elements if vec else None) == least


def test_search_limits():
    G = construct("C 7 : C 3 @ 2")
    with pytest.raises(UnsupportedSignature):
        find_generating_vector(G, S("(1;3)"))
    with pytest.raises(UnsupportedSignature):
        find_generating_vector(G, S("(0;3,3,3,3,3,3,3)"))
    with pytest.raises(SizeCap):
        find_generating_vector(construct("Fermat 4"), S("(0;2,3,8)"), cap=50)


def test_genus_of_low_genus_actions():
    assert genus_of_action(construct("Alt 4"), S("(0;2,3,3)", hyperbolic=False)) == 0
    assert genus_of_action(construct("C 3 x C 3"), S("(0;3,3,3)", hyperbolic=False)) == 1


def test_min_genus_examples():
    res = min_genus_bounded(construct("C 11 : C 5 @ 3"), Fraction(1))
    assert (res.genus, res.signature) == (12, S("(0;5,5,5)"))
    assert "bounded search" in res.note
    res = min_genus_bounded(construct("C 7 : C 3 @ 2"), Fraction(1))
    assert (res.genus, res.signature) == (3, S("(0;3,3,7)"))
    assert min_genus_bounded(construct("C 3"), Fraction(1, 2)) is None
    assert min_genus_bounded(construct("C 3"), Fraction(2, 3)).genus == 2
    with pytest.raises(UnsupportedSignature):
        min_genus_bounded(construct("C 3"), Fraction(1), orbit_genus_max=1)


def test_min_genus_of_gl23_is_two():
    res = min_genus_bounded(construct("GL2 3"), Fraction(1, 2))
    assert res.genus == 2 and res.vector.verify()


def test_macbeath_genus():
    assert macbeath_genus(2, 1) == 2
    assert [macbeath_genus(2, n) for n in (2, 3, 5)] == [n**4 + 1 for n in (2, 3, 5)]
    assert [macbeath_genus(3, n) for n in (2, 3)] == [2 * n**6 + 1 for n in (2, 3)]
    assert macbeath_genus(2, 10**6) == 10**24 + 1
    with pytest.raises(ValueError):
        macbeath_genus(1, 2)
