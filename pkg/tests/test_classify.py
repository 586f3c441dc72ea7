import pytest
from hypothesis import given, strategies as st

from autbound.bounds import CLASS_PARENTS
from autbound.classify import (
    chain_indices,
    classify,
    clt_missing_divisors,
    is_supersolvable,
    metacyclic_witness,
    smallest_prime_divisor,
    strictly_q_closed_check,
    zappa_chain,
)
from autbound.errors import PrimeDoesNotDivide
from autbound.groups import generate
from autbound.groupspec import construct
from corpus import CORPUS, SMALL
from oracles import brute_flags

FLAGS = [
    "abelian", "cyclic", "nilpotent", "solvable", "supersolvable", "metabelian", "metacyclic",
    "z_group", "clt", "odd_elements_subgroup", "nilpotent_commutator", "odd_commutator",
]


@pytest.fixture(scope="module")
def profiles():
    return {spec: classify(construct(spec)) for spec in CORPUS}


@pytest.mark.parametrize("spec", SMALL)
def test_flags_against_definitions(spec, profiles):
    expected = brute_flags(construct(spec).table)
    got = profiles[spec]
    assert {k: getattr(got, k) for k in FLAGS} == expected


IMPLICATIONS = [
    ("cyclic", "abelian"),
    ("abelian", "nilpotent"),
    ("nilpotent", "supersolvable"),
    ("supersolvable", "solvable"),
    ("supersolvable", "clt"),
    ("supersolvable", "nilpotent_commutator"),
    ("metabelian", "solvable"),
    ("z_group", "metacyclic"),
    ("metacyclic", "metabelian"),
]


@pytest.mark.parametrize("spec", CORPUS)
def test_implication_lattice(spec, profiles):
    p = profiles[spec]
    for a, b in IMPLICATIONS:
        if getattr(p, a):
            assert getattr(p, b), f"{spec}: {a} without {b}"


@pytest.mark.parametrize("spec", CORPUS)
def test_member_classes_closed_under_registry_lattice(spec, profiles):
    # every class a group is in must also contain it in each registry parent
    members = set(profiles[spec].member_classes())
    for cls in members & set(CLASS_PARENTS):
        assert set(CLASS_PARENTS[cls]) <= members, (spec, cls)


def test_named_examples(profiles):
    a4 = profiles["Alt 4"]
    assert (a4.clt, a4.clt_missing, a4.supersolvable, a4.solvable, a4.nilpotent_commutator) == (
        False, [6], False, True, True,
    )
    s4 = profiles["Sym 4"]
    assert (s4.clt, s4.supersolvable, s4.nilpotent_commutator) == (True, False, False)
    g21 = profiles["C 7 : C 3 @ 2"]
    assert (g21.metacyclic, g21.supersolvable, g21.z_group, g21.metabelian, g21.exponent) == (
        True, True, True, True, 21,
    )
    gl = profiles["GL2 3"]
    assert (gl.order, gl.clt, gl.supersolvable) == (48, True, False)
    g75 = profiles["MAT 5 : C 3"]
    assert (g75.clt, g75.clt_missing, g75.odd_order) == (False, [15], True)
    assert profiles["Alt 5"].solvable is False


def test_a4_times_c2_is_clt(profiles):
    # the direct product has the subgroup C3 x C2 of order 6, so no divisor is missing
    p = profiles["Alt 4 x C 2"]
    assert p.clt is True and p.clt_missing == []


def test_zappa_chains():
    assert chain_indices(zappa_chain(construct("C 12"))) == (2, 2, 3)
    G = construct("C 7 : C 3 @ 2")
    chain = zappa_chain(G)
    assert chain_indices(chain) == (3, 7)
    assert all(H.is_normal() for H in chain)
    assert zappa_chain(construct("Alt 4")) is None


@pytest.mark.parametrize("spec", CORPUS)
def test_zappa_chain_certificate(spec, profiles):
    G = construct(spec)
    chain = zappa_chain(G)
    assert (chain is not None) == profiles[spec].supersolvable == is_supersolvable(G)
    if chain:
        assert chain[0].order == G.n and chain[-1].order == 1
        idx = chain_indices(chain)
        assert all(is_prime_number(i) for i in idx)
        assert all(H.is_normal() for H in chain)


def is_prime_number(k):
    return k > 1 and all(k % d for d in range(2, k))


@pytest.mark.parametrize("spec", CORPUS)
def test_metacyclic_certificate(spec):
    G = construct(spec)
    mw = metacyclic_witness(G)
    if mw:
        N, g = mw
        assert N.is_cyclic and N.is_normal()
        assert len(generate(G, N.generators + (g,))) == G.n


def test_clt_needs_cap():
    p = classify(construct("Fermat 4"), cap=50)
    assert p.clt is None and "clt" in p.undecided
    assert p.metacyclic is None


def test_strictly_closed():
    assert strictly_q_closed_check(construct("C 7 : C 3 @ 2"), 7)
    assert not strictly_q_closed_check(construct("MAT 5 : C 3"), 5)
    assert strictly_q_closed_check(construct("C 9"), 3)
    with pytest.raises(PrimeDoesNotDivide):
        strictly_q_closed_check(construct("C 9"), 5)


def test_smallest_prime_divisor():
    assert [smallest_prime_divisor(n) for n in (15, 49, 2)] == [3, 7, 2]


def test_missing_divisors_of_order_75_group():
    assert clt_missing_divisors(construct("MAT 5 : C 3")) == [15]


@given(st.sampled_from(SMALL + ["GL2 3", "MAT 5 : C 3"]), st.randoms(use_true_random=False))
def test_classification_is_label_invariant(spec, rng):
    G = construct(spec)
    perm = list(range(G.n))
    rng.shuffle(perm)
    a, b = classify(G), classify(G.relabeled(perm))
    for key in FLAGS + ["order", "exponent", "smallest_prime", "pq_signature", "clt_missing", "odd_subgroup_order"]:
        assert getattr(a, key) == getattr(b, key), key
    if a.zappa_indices:
        assert sorted(a.zappa_indices) == sorted(b.zappa_indices)
