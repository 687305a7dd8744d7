"""
Classes of simple varieties, symbolic generators and the two realizations
"""

from motivic import Registry, class_of, parse_class
from motivic.varieties import Affine, Grassmannian, Projective, Torus

reg = Registry()

## Cell decompositions give polynomials in L
for n in range(4):
    print(f"[P^{n}] =", class_of(Projective(n), reg))
print("[Gr(2,4)] =", class_of(Grassmannian(2, 4), reg))
print("[T^3]     =", class_of(Torus(3), reg))

## L is invertible, so negative powers are fine
p = parse_class("L^-1 * P(2) - pt", reg)
print("L^-1 [P^2] - 1 =", p)

## Symbolic generators carry only a dimension and a few flags
X = reg.symbol("X", 2)
c = (X + class_of(Affine(1), reg)) * class_of(Projective(1), reg)
print("([X] + L)(1 + L) =", c)
print("as JSON:", c.render("machine"))

## Euler characteristic (L -> 1) and point counts (L -> q)
P2 = class_of(Projective(2), reg)
print("euler [P^2] =", P2.euler())
for q in (2, 3, 4, 5):
    print(f"#P^2(F_{q}) =", P2.point_count(q))

## Gaussian binomials count subspaces over finite fields
print("#Gr(2,4)(F_2) =", class_of(Grassmannian(2, 4), reg).point_count(2))

## Symbolic classes have no numeric realization
try:
    c.euler()
except Exception as exc:
    print(type(exc).__name__ + ":", exc)
