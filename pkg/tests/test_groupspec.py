import pytest

from autbound.errors import InvalidTwist, NotIrreducible, SizeCap, SpecSyntaxError
from autbound.groupspec import (
    check_cyclotomic_factor,
    construct,
    default_quadratic,
    load_group,
    parse_quadratic,
)


@pytest.mark.parametrize(
    "spec,order,abelian",
    [
        ("C 7 : C 3 @ 2", 21, False),
        ("C7:C3@2", 21, False),
        ("C 7 ⋊ C 3 @ 2", 21, False),
        ("GL2 3", 48, False),
        ("Sym 4", 24, False),
        ("Alt 4 × C 2", 24, False),
        ("Alt4xC2", 24, False),
        ("C 5 x C 5", 25, True),
        ("(C 2 x C 2) x C 3", 12, True),
        ("Q8", 8, False),
        ("MAT 5 : C 3", 75, False),
        ("MAT 5 ⋊ C 3 @ x^2+x+1", 75, False),
        ("Fermat 4", 96, False),
        ("C 1", 1, True),
    ],
)
def test_construct(spec, order, abelian):
    G = construct(spec)
    assert (G.n, G.is_abelian) == (order, abelian)
    assert G.name == spec


def test_semidirect_twist_rule():
    with pytest.raises(InvalidTwist):
        construct("C 5 : C 3 @ 2")  # 2^3 = 8 is not 1 mod 5
    with pytest.raises(InvalidTwist):
        construct("C 6 : C 2 @ 2")  # 2 is not a unit mod 6


def test_matrix_polynomial_checks():
    assert parse_quadratic("x^2+x+1") == (1, 1)
    assert parse_quadratic("x^2 + 3*x + 4") == (3, 4)
    check_cyclotomic_factor(1, 1, 5, 3)
    with pytest.raises(NotIrreducible):
        check_cyclotomic_factor(1, 1, 7, 3)  # x^2+x+1 has the root 2 mod 7
    a, b = default_quadratic(5, 3)
    check_cyclotomic_factor(a, b, 5, 3)
    with pytest.raises(NotIrreducible):
        construct("MAT 7 : C 3")  # 3 | 7 - 1, so no irreducible quadratic factor


@pytest.mark.parametrize("spec", ["", "C", "C 7 :", "D 4", "C 7 : C 3 @ two", "(C 2", "MAT 5", "C 2 C 3"])
def test_syntax_errors(spec):
    with pytest.raises(SpecSyntaxError):
        construct(spec)


def test_cap():
    with pytest.raises(SizeCap):
        construct("Sym 5", cap=100)
    assert construct("MAT 5 : C 3 x C 5", cap=400).n == 375


def test_load_group_from_file(tmp_path):
    G = construct("Sym 3")
    path = tmp_path / "s3.tbl"
    path.write_text(G.to_text())
    H = load_group(str(path))
    assert H.table == G.table
    assert load_group("Sym 3").n == 6
