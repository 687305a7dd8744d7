"""
The six operations on stratified bases
"""

from motivic.laurent import L, ONE
from motivic.relative import (
    Base, RelClass, hom, is_proper, pullback_shriek, pullback_star, pushforward_shriek,
    pushforward_star, rel_dual, to_point, unit,
)
from motivic.scenarios import check_all, random_scenario

## The projective line as one stratum, and as a cell plus a point
whole = Base.from_polys("P1", [("x", 1, 1 + L)])
cells = Base.from_polys("P1'", [("a", 1, L), ("p", 1, ONE)])
for S in (whole, cells):
    f = to_point(S)
    print(S.name, "f_! 1 =", pushforward_shriek(f, unit(S)), " f_* 1 =", pushforward_star(f, unit(S)),
          " proper:", is_proper(f))

## The affine line is not proper, and f_* differs from f_!
A1 = Base.from_polys("A1", [("a", 1, L)])
f = to_point(A1)
print("A1: f_! 1 =", pushforward_shriek(f, unit(A1)), " f_* 1 =", pushforward_star(f, unit(A1)))

## f is smooth of relative dimension 1, so f^* = L f^!
b = RelClass(f.target, {"*": 1 + L})
print("f^* b =", pullback_star(f, b), " f^! b =", pullback_shriek(f, b))

## Duality and internal Hom
a = RelClass(cells, {"a": 1 + L, "p": 2})
print("D a =", rel_dual(a), " Hom(a, a) =", hom(a, a))

## The full identity suite on a random scenario
for report in check_all(random_scenario(2026)):
    print(report.line())
