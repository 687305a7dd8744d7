"""
The duality involution and Euler characteristics from SNC completions
"""

from motivic import Registry, class_of, dual_k
from motivic.duality import chi_ordinary, gysin_holds, verify_prespaar
from motivic.laurent import L
from motivic.snc import gysin_library, parse_snc, snc_library
from motivic.varieties import Projective

reg = Registry()

## dual_k sends L to 1/L and a smooth complete generator X to L^-dim X [X]
print("D([P^2]) =", dual_k(class_of(Projective(2), reg)))
X = reg.symbol("X", 3)
print("D((1 + L)[X]) =", dual_k(X.scale(1 + L)))

## The affine plane, completed three different ways
lib = snc_library()
for name in ("A^2 via P^2", "A^2 via P^1 x P^1", "A^2 via the blown-up plane"):
    print(f"chi({name}) =", chi_ordinary(lib[name], reg))

## chi agrees with L^dim * D([X]) on every bundled case
for name, d in lib.items():
    print(f"{name:28s}", verify_prespaar(d, reg).describe())

## Removing a smooth divisor
for X, D, U in gysin_library():
    print(f"{U.name}: chi(X - D) = chi(X) - L chi(D) is", gysin_holds(X, D, U, reg))

## Completions can be written in a small text format
(d,) = parse_snc("""
name = T^2 via P^2
# the torus as the complement of three lines in general position
interior = T(2)
ambient = P(2)
levels = [P(2), P(1) + P(1) + P(1), pt + pt + pt]
""")
print(d.name, "->", verify_prespaar(d, reg).describe())
