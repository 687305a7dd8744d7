"""
Blow-ups and the two relations they satisfy
"""

from motivic import class_of
from motivic.laurent import L
from motivic.parser import parse_expr
from motivic.varieties import BlowUp, Symbolic, exceptional_divisor

## The plane blown up at a point is P^1 x P^1 up to class
b = parse_expr("bl(P(2); pt; 2)")
print(b, "=", class_of(b))
print("P(1) * P(1) =", class_of(parse_expr("P(1) * P(1)")))

## The exceptional divisor is a projective bundle over the center
b = parse_expr("bl(P(3); P(1); 2)")
E = exceptional_divisor(b)
print("E =", E, "with class", class_of(E))

## Both relations, for symbolic X and Y of codimension 3
X, Y = Symbolic("X", 5), Symbolic("Y", 2)
b = BlowUp(X, Y, 3)
Bl, E, x, y = (class_of(e) for e in (b, exceptional_divisor(b), X, Y))
print("[Bl] - [E]   =", Bl - E)
print("[X] - [Y]    =", x - y)
print("[Bl] - L[E]  =", Bl - E.scale(L))
print("[X] - L^3[Y] =", x - y.scale(L**3))

## Dimensions are checked
try:
    class_of(parse_expr("bl(P(3); pt; 2)"))
except Exception as exc:
    print(type(exc).__name__ + ":", exc)
