import itertools

import pytest

from motivic.errors import DomainError
from motivic.laurent import L, ONE, LaurentPoly
from motivic.varieties import (
    Affine, BlowUp, Complement, DisjointUnion, Empty, Grassmannian, Point, ProjBundle,
    Product, Projective, Scalar, Symbolic, Torus, VecBundle, class_of, exceptional_divisor,
    gaussian_binomial,
)


def poly(reg, expr):
    return class_of(expr, reg).as_poly()


@pytest.mark.parametrize("expr, expected", [
    (Empty(), LaurentPoly()),
    (Point(), ONE),
    (Affine(3), L**3),
    (Projective(2), 1 + L + L**2),
    (Torus(2), 1 - 2 * L + L**2),
    (Grassmannian(2, 4), 1 + L + 2 * L**2 + L**3 + L**4),
    (Product(Projective(1), Projective(1)), 1 + 2 * L + L**2),
    (Complement(Projective(2), Projective(1)), L**2),
    (VecBundle(Projective(1), 2), L**2 + L**3),
    (ProjBundle(Affine(1), 3), L + L**2 + L**3),
    (BlowUp(Projective(2), Point(), 2), 1 + 2 * L + L**2),
    (BlowUp(Affine(2), Point(), 2), L + L**2),
    (DisjointUnion(Point(), Affine(1)), 1 + L),
])
def test_golden_classes(reg, expr, expected):
    assert poly(reg, expr) == expected


def test_exceptional_divisor_of_line_in_p3(reg):
    b = BlowUp(Projective(3), Projective(1), 2)
    assert poly(reg, exceptional_divisor(b)) == (1 + L) * (1 + L)
    assert poly(reg, b) == (1 + L + L**2 + L**3) + L * (1 + L)


def test_exceptional_divisor_needs_blowup():
    with pytest.raises(DomainError):
        exceptional_divisor(Projective(2))


def schubert_cells(k, n):
    # cells of Gr(k, n) are indexed by k-subsets a_1 < ... < a_k of {1..n}
    out = LaurentPoly()
    for subset in itertools.combinations(range(1, n + 1), k):
        out = out + LaurentPoly.monomial(sum(a - i for i, a in enumerate(subset, start=1)))
    return out


def count_subspaces_f2(k, n):
    # brute force: distinct row spaces of k x n full-rank matrices over F_2
    vectors = range(1, 2**n)
    spaces = set()
    for rows in itertools.combinations(vectors, k):
        span = {0}
        for r in rows:
            span |= {s ^ r for s in span}
        if len(span) == 2**k:
            spaces.add(frozenset(span))
    return len(spaces)


@pytest.mark.parametrize("n", range(0, 9))
def test_grassmannian_matches_schubert_cells(n):
    for k in range(0, n + 1):
        assert gaussian_binomial(n, k) == schubert_cells(k, n)


@pytest.mark.parametrize("k, n", [(1, 3), (2, 4), (2, 5), (3, 5), (1, 6)])
def test_grassmannian_point_count_over_f2(reg, k, n):
    assert class_of(Grassmannian(k, n), reg).point_count(2) == count_subspaces_f2(k, n)


def test_grassmannian_bounds():
    with pytest.raises(DomainError):
        Grassmannian(5, 4)
    with pytest.raises(DomainError):
        Affine(-1)


def random_blowup(rng, reg):
    d = rng.randint(1, 4)
    if rng.random() < 0.5:
        dy = rng.randint(0, 3)
        Y = Symbolic(f"Y{rng.randint(0, 9)}x{dy}", dy)
        X = Symbolic(f"X{rng.randint(0, 9)}x{dy + d}", dy + d)
    else:
        Y = rng.choice([Point(), Projective(rng.randint(0, 3)), Affine(rng.randint(0, 3))])
        X = rng.choice([Projective, Affine])(Y.dim + d)
    return BlowUp(X, Y, d)


def test_blowup_relations(reg, rng):
    for _ in range(200):
        b = random_blowup(rng, reg)
        X, Y, E = (class_of(e, reg) for e in (b.ambient, b.center, exceptional_divisor(b)))
        Bl = class_of(b, reg)
        assert Bl - E == X - Y
        assert Bl - E.scale(L) == X - Y.scale(LaurentPoly.monomial(b.codim))


def test_blowup_dimension_mismatch():
    with pytest.raises(DomainError, match="expected dim X - d"):
        class_of(BlowUp(Projective(3), Point(), 2))
    with pytest.raises(DomainError, match="d >= 1"):
        BlowUp(Projective(2), Point(), 0)


def test_blowup_needs_smooth_input():
    with pytest.raises(DomainError, match="not smooth"):
        class_of(BlowUp(Symbolic("X", 2, smooth=False), Point(), 2))


def test_projective_space_stratification(reg):
    for n in range(0, 8):
        strata = sum((class_of(Affine(i), reg) for i in range(n + 1)), reg.zero())
        assert class_of(Projective(n), reg) == strata
        assert class_of(Complement(Projective(n), Projective(n - 1)) if n else Projective(0), reg) \
            == class_of(Affine(n), reg)


def test_torus_is_product_of_punctured_lines(reg):
    gm = Complement(Affine(1), Point())
    for n in range(1, 6):
        prod = gm
        for _ in range(n - 1):
            prod = Product(prod, gm)
        assert class_of(prod, reg) == class_of(Torus(n), reg)


def test_class_of_is_a_homomorphism(reg, rng):
    atoms = [Point(), Affine(2), Projective(1), Torus(1), Symbolic("X", 1), Symbolic("Y", 2)]
    for _ in range(100):
        a, b = rng.choice(atoms), rng.choice(atoms)
        assert class_of(Product(a, b), reg) == class_of(a, reg) * class_of(b, reg)
        assert class_of(DisjointUnion(a, b), reg) == class_of(a, reg) + class_of(b, reg)


def test_bundles_over_symbolic_base(reg):
    X = Symbolic("X", 2)
    x = class_of(X, reg)
    assert class_of(VecBundle(X, 3), reg) == x.scale(L**3)
    assert class_of(ProjBundle(X, 2), reg) == x.scale(1 + L)
    assert VecBundle(X, 3).dim == 5 and ProjBundle(X, 2).dim == 3


def test_complement_metadata():
    c = Complement(Projective(2), Projective(1))
    assert c.meta() == (2, True, False, False)
    with pytest.raises(DomainError):
        Complement(Affine(1), Affine(2)).meta()
    assert Complement(Affine(1), Affine(1)).meta().dim is None


def test_scalars_are_not_varieties(reg):
    with pytest.raises(DomainError):
        Product(Scalar(L), Point()).meta()
    assert class_of(Product(Scalar(L), Projective(1)), reg).as_poly() == L + L**2


def test_default_registry_is_shared():
    assert class_of(Symbolic("Q", 1)).registry is class_of(Point()).registry
