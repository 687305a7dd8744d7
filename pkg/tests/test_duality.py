from collections import defaultdict

import pytest

from motivic.duality import (
    SNCData, chi_ordinary, complete_snc, dual_k, gysin_holds, pair_chi, snc_problems,
    verify_prespaar,
)
from motivic.errors import DomainError, NotDualizableError, ParseError
from motivic.laurent import L, ONE, LaurentPoly
from motivic.snc import SNCFileError, gysin_library, parse_snc, snc_library
from motivic.varieties import (
    Affine, DisjointUnion, Point, Product, Projective, Symbolic, Torus, class_of,
)


def test_dual_of_projective_plane(reg):
    assert dual_k(class_of(Projective(2), reg)).as_poly() == L**-2 + L**-1 + 1


def test_dual_of_symbolic_generator(reg):
    X = reg.symbol("X", 3)
    assert dual_k(X.scale(1 + L)) == X.scale(L**-3 + L**-4)


@pytest.mark.parametrize("flags, reason", [
    (dict(smooth=False), "not smooth"),
    (dict(complete=False), "not complete"),
    (dict(connected=False), "not connected"),
])
def test_dual_requires_smooth_complete_connected(reg, flags, reason):
    Y = reg.symbol("Y", 1, **flags)
    with pytest.raises(NotDualizableError, match=reason):
        dual_k(Y)


def random_dualizable(rng, reg, gens):
    c = reg.zero()
    for _ in range(rng.randint(0, 4)):
        coeff = LaurentPoly({rng.randint(-4, 4): rng.randint(-6, 6) for _ in range(rng.randint(1, 3))})
        c = c + reg.generator(rng.choice(gens)).scale(coeff)
    return c


def test_dual_is_a_ring_involution(reg, rng):
    gens = [0] + [reg.intern(f"X{i}", i).id for i in range(4)]
    for _ in range(200):
        a, b = random_dualizable(rng, reg, gens), random_dualizable(rng, reg, gens)
        assert dual_k(dual_k(a)) == a
        assert dual_k(a * b) == dual_k(a) * dual_k(b)
        assert dual_k(a + b) == dual_k(a) + dual_k(b)
    assert dual_k(reg.poly(L)) == reg.poly(L**-1)


LIB = snc_library()


@pytest.mark.parametrize("name, expected", [
    ("A^2 via P^2", ONE),
    ("A^2 via P^1 x P^1", ONE),
    ("A^2 via the blown-up plane", ONE),
    ("G_m via P^1", 1 - L),
    ("T^2 via P^1 x P^1", (1 - L) ** 2),
    ("T^3 via (P^1)^3", (1 - L) ** 3),
    ("A^4 via P^4", ONE),
    ("P^2 minus a line", ONE),
    ("P^1", 1 + L),
])
def test_chi_golden(reg, name, expected):
    assert chi_ordinary(LIB[name], reg).as_poly() == expected


def test_library_shape(reg):
    classes = {class_of(d.interior, reg) for d in LIB.values()}
    for n in range(1, 5):
        assert class_of(Affine(n), reg) in classes
    for n in range(1, 4):
        assert class_of(Torus(n), reg) in classes
    assert "P^2 minus a line" in LIB and len(LIB) >= 8


@pytest.mark.parametrize("name", sorted(LIB))
def test_chi_matches_dual_on_library(reg, name):
    res = verify_prespaar(LIB[name], reg)
    assert res.ok, res.describe()


def test_chi_independent_of_completion(reg):
    by_interior = defaultdict(list)
    for d in LIB.values():
        by_interior[class_of(d.interior, reg)].append(chi_ordinary(d, reg))
    assert len(by_interior[class_of(Affine(2), reg)]) >= 3
    for values in by_interior.values():
        assert all(v == values[0] for v in values)


def test_chi_of_complete_variety_is_its_class(reg):
    for x in (Projective(3), Product(Projective(1), Projective(2)), Symbolic("X", 2)):
        assert chi_ordinary(complete_snc(x), reg) == class_of(x, reg)


def test_dual_check_detects_a_wrong_boundary(reg):
    # P^2 minus a line, but the boundary is declared to be a conic with an extra point
    bad = SNCData(Affine(2), Projective(2), (Projective(2), Projective(1), Point()))
    res = verify_prespaar(bad, reg)
    assert not res.ok
    assert res.describe().startswith("FAIL")


@pytest.mark.parametrize("triple", range(3))
def test_gysin(reg, triple):
    X, D, U = gysin_library()[triple]
    assert gysin_holds(X, D, U, reg)
    assert pair_chi(X, U, reg) == chi_ordinary(D, reg).scale(L)


def test_pair_chi_with_empty(reg):
    assert pair_chi(LIB["P^1"], None, reg) == chi_ordinary(LIB["P^1"], reg)
    assert pair_chi(None, LIB["pt"], reg) == reg.poly(LaurentPoly.const(-1))


@pytest.mark.parametrize("interior, ambient, levels, field", [
    (Affine(2), Affine(2), (Affine(2),), "ambient"),
    (Affine(1), Projective(2), (Projective(2),), "interior"),
    (DisjointUnion(Affine(1), Affine(1)), Projective(1), (Projective(1), Point()), "interior"),
    (Affine(1), Projective(1), (Projective(2),), "levels"),
    (Affine(1), Projective(1), (Projective(1), Projective(1)), "levels"),
    (Affine(1), Projective(1), (Projective(1), Point(), Point()), "levels"),
])
def test_snc_invariants(interior, ambient, levels, field):
    problems = snc_problems(interior, ambient, levels)
    assert problems and problems[0][0] == field
    with pytest.raises(DomainError):
        SNCData(interior, ambient, levels)


SNC_TEXT = """\
# two records
name = first
interior = A(1)
ambient = P(1)
levels = [P(1),
          pt]
---
interior = T(1)
ambient = P(1)
levels = [P(1), pt + pt]
"""


def test_parse_snc_file():
    first, second = parse_snc(SNC_TEXT)
    assert first.name == "first" and first.levels == (Projective(1), Point())
    assert second.name == "" and second.interior == Torus(1)


def test_snc_invariant_error_is_anchored_to_field_line():
    text = "name = x\ninterior = A(2)\nambient = P(1)\nlevels = [P(1), pt]\n"
    with pytest.raises(SNCFileError) as info:
        parse_snc(text)
    assert info.value.line == 2
    assert "line 2" in str(info.value)


@pytest.mark.parametrize("text, line, column", [
    ("interior = A(1)\nambient = P(1)\nlevels = [P(1), pt", 3, 10),
    ("interior = A(1)\nambient = P(1\nlevels = [P(1), pt]", 2, 14),
    ("interior = A(1)\nwhatever = 3\n", 2, 1),
    ("interior = A(1)\nambient = P(1)\n", 1, 1),
    ("", 1, 1),
])
def test_snc_syntax_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_snc(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_pair_chi_of_complete_inputs(reg):
    assert pair_chi(complete_snc(Projective(1)), complete_snc(Point()), reg).as_poly() == L
