"""The nine acceptance criteria, each timed and reported on one line."""

import io
import random
import time
from contextlib import contextmanager


from conftest import ACCEPTANCE_LINES, golden_cases
from test_parser import random_expr

from motivic.cli import main
from motivic.core import Registry
from motivic.duality import chi_ordinary, dual_k, gysin_holds, verify_prespaar
from motivic.laurent import L, ONE, LaurentPoly
from motivic.parser import parse_class_expr, render_expr
from motivic.scenarios import IDENTITIES, check_all, random_scenario
from motivic.snc import gysin_library, snc_library
from motivic.varieties import (
    Affine, BlowUp, Point, Projective, Symbolic, Torus, class_of, exceptional_divisor,
)


@contextmanager
def criterion(number, title, budget=None):
    start = time.perf_counter()
    verdict = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        verdict = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        limit = f" (budget {budget:g}s)" if budget is not None else ""
        line = f"[{verdict}] {number}. {title}: {elapsed:.3f}s{limit}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def _mixed_classes(reg, rng, n):
    gens = [0, reg.intern("X", 1).id, reg.intern("Y", 2, complete=False).id, reg.intern("Z", 0).id]
    out = []
    for _ in range(n):
        c = reg.zero()
        for _ in range(rng.randint(0, 3)):
            coeff = LaurentPoly({rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(rng.randint(1, 2))})
            c = c + reg.generator(rng.choice(gens)).scale(coeff)
        out.append(c)
    return out


def test_1_ring_laws():
    reg, rng = Registry(), random.Random(1)
    pool = _mixed_classes(reg, rng, 60)
    zero, one = reg.zero(), reg.one()
    triples = [tuple(rng.choice(pool) for _ in range(3)) for _ in range(1000)]
    with criterion(1, "ring laws on 1000 mixed triples", budget=1.0):
        for a, b, c in triples:
            assert a + b == b + a and a * b == b * a
            assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + zero == a and a * one == a and a - a == zero


def _random_blowup(rng, i):
    d = rng.randint(1, 4)
    if i % 2:
        dy = rng.randint(0, 3)
        return BlowUp(Symbolic(f"X{i}", dy + d), Symbolic(f"Y{i}", dy), d)
    Y = rng.choice([Point(), Projective(rng.randint(0, 3)), Affine(rng.randint(0, 3))])
    return BlowUp(rng.choice([Projective, Affine])(Y.dim + d), Y, d)


def test_2_blowup_relations():
    reg, rng = Registry(), random.Random(2)
    cases = [_random_blowup(rng, i) for i in range(200)]
    with criterion(2, "blow-up relations on 200 instances", budget=1.0):
        for b in cases:
            X, Y = class_of(b.ambient, reg), class_of(b.center, reg)
            E, Bl = class_of(exceptional_divisor(b), reg), class_of(b, reg)
            assert Bl - E == X - Y
            assert Bl - E.scale(L) == X - Y.scale(LaurentPoly.monomial(b.codim))


def test_3_duality():
    reg, rng = Registry(), random.Random(3)
    for i in range(4):
        reg.intern(f"G{i}", i)
    gens = [0, 1, 2, 3, 4]
    classes = []
    for _ in range(200):
        c = reg.zero()
        for _ in range(rng.randint(0, 4)):
            coeff = LaurentPoly({rng.randint(-4, 4): rng.randint(-6, 6) for _ in range(rng.randint(1, 3))})
            c = c + reg.generator(rng.choice(gens)).scale(coeff)
        classes.append(c)
    with criterion(3, "duality on 200 dualizable classes", budget=1.0):
        assert dual_k(reg.poly(L)) == reg.poly(L**-1)
        for a, b in zip(classes, classes[1:] + classes[:1]):
            assert dual_k(dual_k(a)) == a
            assert dual_k(a * b) == dual_k(a) * dual_k(b)


def test_4_chi_golden():
    lib, reg = snc_library(), Registry()
    with criterion(4, "chi golden set", budget=1.0):
        assert chi_ordinary(lib["A^2 via P^2"], reg).as_poly() == ONE
        assert chi_ordinary(lib["A^2 via P^1 x P^1"], reg).as_poly() == ONE
        assert chi_ordinary(lib["G_m via P^1"], reg).as_poly() == 1 - L
        t2 = lib["T^2 via P^1 x P^1"]
        assert t2.interior == Torus(2)
        assert chi_ordinary(t2, reg).as_poly() == (1 - L) ** 2


def test_5_chi_matches_dual_on_library():
    reg = Registry()
    with criterion(5, "chi = L^dim * dual on the bundled SNC library", budget=1.0):
        lib = snc_library()
        assert len(lib) >= 8
        interiors = {class_of(d.interior, reg) for d in lib.values()}
        assert all(class_of(Affine(n), reg) in interiors for n in range(1, 5))
        assert all(class_of(Torus(n), reg) in interiors for n in range(1, 4))
        assert "P^2 minus a line" in lib
        for name, d in lib.items():
            res = verify_prespaar(d, reg)
            assert res.ok, f"{name}: {res.describe()}"


def test_6_gysin():
    reg = Registry()
    with criterion(6, "Gysin relation on the three bundled pairs"):
        triples = gysin_library()
        assert len(triples) == 3
        for X, D, U in triples:
            assert gysin_holds(X, D, U, reg)


def test_7_six_operations():
    scenarios = [random_scenario(seed) for seed in range(100)]
    checked = dict.fromkeys(IDENTITIES, 0)
    with criterion(7, "six-operation identities on 100 random scenarios", budget=5.0):
        for seed, sc in enumerate(scenarios):
            assert all(len(b) <= 5 for b in sc.bases.values())
            for report in check_all(sc):
                assert report.ok, f"seed {seed}: {report.line()}"
                checked[report.name] += report.checked
        assert all(checked.values()), checked


def test_8_realizations():
    reg = Registry()
    with criterion(8, "point counts and Euler characteristics"):
        assert class_of(Projective(2), reg).point_count(4) == 21
        for n in range(0, 7):
            assert class_of(Projective(n), reg).euler() == n + 1
        for n in range(1, 9):
            assert class_of(Torus(n), reg).euler() == 0


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    return main(argv, out, err), out.getvalue()


def test_9_cli():
    rng = random.Random(9)
    exprs = [random_expr(rng, 4) for _ in range(1000)]
    corpus = golden_cases()
    with criterion(9, "CLI round-trip fuzz, golden corpus and exit statuses"):
        for e in exprs:
            assert parse_class_expr(render_expr(e)) == e
        assert len(corpus) >= 10
        for argv, expected, status in corpus:
            code, out = _run(argv)
            assert code == status and out.encode() == expected.read_bytes()
        assert _run(["eval", "-e", "bl(P(2); pt; 2)"]) == (0, "1 + 2*L + L^2\n")
        assert _run(["eval", "-e", "bl(P(2); pt; 0)"])[0] == 1
        assert _run(["eval", "-e", "P(2"])[0] == 2
