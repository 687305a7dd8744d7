"""Exact integer Laurent polynomials in the Lefschetz symbol ``L``.

A :class:`LaurentPoly` is a sparse map ``exponent -> coefficient`` with
Python integers on both sides, so there is no overflow and exponents may
be negative.  Values are immutable and hashable.

>>> p = LaurentPoly.geometric(3)          # 1 + L + L^2
>>> str(p)
'1 + L + L^2'
>>> str(p.dual())
'L^-2 + L^-1 + 1'
>>> p.substitute(4)
Fraction(21, 1)
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import PoleError

__all__ = ["LaurentPoly", "L", "ONE", "ZERO"]


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # caller guarantees: no zero coefficients; the dict is taken over, not copied
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coefficient} if coefficient else {})

    @classmethod
    def geometric(cls, n: int) -> "LaurentPoly":
        """``1 + L + ... + L^(n-1)``, the class of projective (n-1)-space."""
        return cls._raw({i: 1 for i in range(n)})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        return NotImplemented

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the canonical rendering (or any class-mode expression that is L-pure)."""
        from .parser import parse_class
        from .core import Registry

        return parse_class(text, Registry()).as_poly()

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        """``(exponent, coefficient)`` pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def min_exponent(self) -> int | None:
        return min(self._terms, default=None)

    @property
    def max_exponent(self) -> int | None:
        return max(self._terms, default=None)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if type(other) is not LaurentPoly:
            other = LaurentPoly.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if type(other) is not LaurentPoly:
            other = LaurentPoly.coerce(other)
            if other is NotImplemented:
                return NotImplemented
        a, b = self._terms, other._terms
        if len(b) == 1:
            (e2, c2), = b.items()
            return LaurentPoly._raw({e1 + e2: c1 * c2 for e1, c1 in a.items()})
        if len(a) == 1:
            (e1, c1), = a.items()
            return LaurentPoly._raw({e1 + e2: c1 * c2 for e2, c2 in b.items()})
        out: dict[int, int] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only monomial units can be raised to negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(e * n, c ** (-n))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``L^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def dual(self) -> "LaurentPoly":
        """Replace ``L`` by ``L^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def substitute(self, value) -> Fraction:
        """Evaluate exactly at ``L = value``; ``value`` is an int or rational."""
        if not isinstance(value, (int, Rational)):
            raise TypeError("substitution value must be an exact rational")
        v = Fraction(value)
        if v == 0 and any(e < 0 for e in self._terms):
            raise PoleError(f"{self} has a pole at L = 0")
        return sum((c * v**e for e, c in self._terms.items()), Fraction(0))

    # -- rendering ---------------------------------------------------------

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"

    def render(self, fmt: str = "plain") -> str:
        if not self._terms:
            return "0"
        pieces = []
        for e, c in sorted(self._terms.items()):
            if fmt == "latex":
                mono = "" if e == 0 else ("\\mathbb{L}" if e == 1 else f"\\mathbb{{L}}^{{{e}}}")
                sep = ""
            else:
                mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
                sep = "*"
            if not mono:
                text = str(c)
            elif c == 1:
                text = mono
            elif c == -1:
                text = "-" + mono
            else:
                text = f"{c}{sep}{mono}"
            pieces.append(text)
        out = pieces[0]
        for text in pieces[1:]:
            out += " - " + text[1:] if text.startswith("-") else " + " + text
        return out

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
L = LaurentPoly.monomial(1)
