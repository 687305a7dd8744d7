"""Combinatorial variety expressions and their motivic classes.

Each node of a :class:`VarietyExpr` tree describes a construction whose class
is computable from the cut-and-paste and blow-up relations:

=================  ==========================================
node               class
=================  ==========================================
``Empty``          0
``Point``          1
``Affine(n)``      L^n
``Projective(n)``  1 + L + ... + L^n
``Torus(n)``       (L - 1)^n
``Grassmannian``   Gaussian binomial in L
``Complement``     [X] - [Y]
``VecBundle``      L^r [X]
``ProjBundle``     (1 + ... + L^(r-1)) [X]
``BlowUp``         [X] - [Y] + [E],  E = ProjBundle(Y, d)
=================  ==========================================

Geometric side conditions (closedness, smoothness) are trusted, not checked;
only the numerical ones (dimensions, bounds) are.

Two extra node kinds, :class:`Scalar` and :class:`Difference`, exist for
class-level expressions such as ``L^-1 * P(2) - pt``; they have no variety
metadata and are rejected wherever a genuine variety is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import MotivicClass, Registry
from .errors import DomainError
from .laurent import ONE, LaurentPoly, L

__all__ = [
    "VarietyExpr", "Empty", "Point", "Affine", "Projective", "Torus", "Grassmannian",
    "Product", "DisjointUnion", "Complement", "VecBundle", "ProjBundle", "BlowUp",
    "Symbolic", "Scalar", "Difference", "Meta", "class_of", "exceptional_divisor",
    "gaussian_binomial", "default_registry",
]

_DEFAULT_REGISTRY = Registry()


def default_registry() -> Registry:
    """The process-wide registry used when none is passed explicitly."""
    return _DEFAULT_REGISTRY


class Meta(NamedTuple):
    dim: int | None  # None for the empty variety
    smooth: bool
    complete: bool
    connected: bool


def _nonneg(name, value):
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")


class VarietyExpr:
    """Base class of the expression tree.  Nodes are immutable and hashable."""

    __slots__ = ()

    def meta(self) -> Meta:
        raise NotImplementedError

    @property
    def dim(self) -> int | None:
        return self.meta().dim

    def __mul__(self, other):
        return Product(self, other) if isinstance(other, VarietyExpr) else NotImplemented

    def __add__(self, other):
        return DisjointUnion(self, other) if isinstance(other, VarietyExpr) else NotImplemented

    def __str__(self):
        from .parser import render_expr

        return render_expr(self)


@dataclass(frozen=True)
class Empty(VarietyExpr):
    def meta(self):
        return Meta(None, True, True, False)


@dataclass(frozen=True)
class Point(VarietyExpr):
    def meta(self):
        return Meta(0, True, True, True)


@dataclass(frozen=True)
class Affine(VarietyExpr):
    n: int

    def __post_init__(self):
        _nonneg("A(n): n", self.n)

    def meta(self):
        return Meta(self.n, True, self.n == 0, True)


@dataclass(frozen=True)
class Projective(VarietyExpr):
    n: int

    def __post_init__(self):
        _nonneg("P(n): n", self.n)

    def meta(self):
        return Meta(self.n, True, True, True)


@dataclass(frozen=True)
class Torus(VarietyExpr):
    n: int

    def __post_init__(self):
        _nonneg("T(n): n", self.n)

    def meta(self):
        return Meta(self.n, True, self.n == 0, True)


@dataclass(frozen=True)
class Grassmannian(VarietyExpr):
    k: int
    n: int

    def __post_init__(self):
        _nonneg("Gr(k, n): k", self.k)
        _nonneg("Gr(k, n): n", self.n)
        if self.k > self.n:
            raise DomainError(f"Gr(k, n) needs 0 <= k <= n, got k={self.k}, n={self.n}")

    def meta(self):
        return Meta(self.k * (self.n - self.k), True, True, True)


def _require(expr, what):
    if not isinstance(expr, VarietyExpr):
        raise DomainError(f"{what} must be a variety expression, got {expr!r}")


@dataclass(frozen=True)
class Product(VarietyExpr):
    left: VarietyExpr
    right: VarietyExpr

    def __post_init__(self):
        _require(self.left, "product factor")
        _require(self.right, "product factor")

    def meta(self):
        a, b = self.left.meta(), self.right.meta()
        if a.dim is None or b.dim is None:
            return Empty().meta()
        return Meta(a.dim + b.dim, a.smooth and b.smooth, a.complete and b.complete,
                    a.connected and b.connected)


@dataclass(frozen=True)
class DisjointUnion(VarietyExpr):
    left: VarietyExpr
    right: VarietyExpr

    def __post_init__(self):
        _require(self.left, "disjoint union summand")
        _require(self.right, "disjoint union summand")

    def meta(self):
        a, b = self.left.meta(), self.right.meta()
        if a.dim is None:
            return b
        if b.dim is None:
            return a
        return Meta(max(a.dim, b.dim), a.smooth and b.smooth, a.complete and b.complete, False)


@dataclass(frozen=True)
class Complement(VarietyExpr):
    """``X \\ Y`` for ``Y`` asserted closed in ``X``."""

    whole: VarietyExpr
    closed: VarietyExpr

    def __post_init__(self):
        _require(self.whole, "complement ambient")
        _require(self.closed, "removed subvariety")

    def meta(self):
        x, y = self.whole.meta(), self.closed.meta()
        if y.dim is None:
            return x
        if x.dim is None or y.dim > x.dim:
            raise DomainError(f"cannot remove a {y.dim}-dimensional subvariety from {self.whole}")
        if self.whole == self.closed:
            return Empty().meta()
        # connectedness of the complement is not decidable here
        return Meta(x.dim, x.smooth, False, False)


@dataclass(frozen=True)
class VecBundle(VarietyExpr):
    base: VarietyExpr
    rank: int

    def __post_init__(self):
        _require(self.base, "bundle base")
        _nonneg("vb(X, r): r", self.rank)

    def meta(self):
        b = self.base.meta()
        if b.dim is None:
            return b
        return Meta(b.dim + self.rank, b.smooth, b.complete and self.rank == 0, b.connected)


@dataclass(frozen=True)
class ProjBundle(VarietyExpr):
    base: VarietyExpr
    rank: int

    def __post_init__(self):
        _require(self.base, "bundle base")
        _nonneg("pb(X, r): r", self.rank)
        if self.rank < 1:
            raise DomainError("pb(X, r) needs rank r >= 1")

    def meta(self):
        b = self.base.meta()
        if b.dim is None:
            return b
        return Meta(b.dim + self.rank - 1, b.smooth, b.complete, b.connected)


@dataclass(frozen=True)
class BlowUp(VarietyExpr):
    """Blow-up of a smooth ``X`` along a smooth closed ``Y`` of codimension ``d``."""

    ambient: VarietyExpr
    center: VarietyExpr
    codim: int

    def __post_init__(self):
        _require(self.ambient, "blow-up ambient")
        _require(self.center, "blow-up center")
        _nonneg("bl(X; Y; d): d", self.codim)
        if self.codim < 1:
            raise DomainError("bl(X; Y; d) needs codimension d >= 1 "
                              "(the center cannot be the whole space)")

    def meta(self):
        x, y = self.ambient.meta(), self.center.meta()
        if x.dim is None:
            raise DomainError("cannot blow up the empty variety")
        if not x.smooth:
            raise DomainError(f"blow-up ambient {self.ambient} is not smooth")
        if y.dim is not None:
            if not y.smooth:
                raise DomainError(f"blow-up center {self.center} is not smooth")
            if y.dim != x.dim - self.codim:
                raise DomainError(
                    f"blow-up center has dimension {y.dim}, expected "
                    f"dim X - d = {x.dim} - {self.codim} = {x.dim - self.codim}")
        return Meta(x.dim, True, x.complete, x.connected)


@dataclass(frozen=True)
class Symbolic(VarietyExpr):
    """A named variety known only through its dimension and flags."""

    name: str
    dimension: int
    smooth: bool = True
    complete: bool = True
    connected: bool = True

    def __post_init__(self):
        _nonneg(f"sym({self.name}): dimension", self.dimension)
        if not isinstance(self.name, str) or not self.name.isidentifier():
            raise DomainError(f"symbol name must be an identifier, got {self.name!r}")

    def meta(self):
        return Meta(self.dimension, self.smooth, self.complete, self.connected)


@dataclass(frozen=True)
class Scalar(VarietyExpr):
    """A Laurent polynomial in L used as a class, not a variety."""

    value: LaurentPoly

    def meta(self):
        raise DomainError(f"the scalar {self.value} is a class, not a variety")


@dataclass(frozen=True)
class Difference(VarietyExpr):
    """Formal difference of classes; unlike ``Complement`` it makes no geometric claim."""

    left: VarietyExpr
    right: VarietyExpr

    def meta(self):
        raise DomainError("a formal difference of classes is not a variety")


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> LaurentPoly:
    """``[n choose k]`` evaluated at ``q = L``, by the q-Pascal rule."""
    if k < 0 or k > n:
        return LaurentPoly()
    if k == 0 or k == n:
        return ONE
    return gaussian_binomial(n - 1, k - 1) + gaussian_binomial(n - 1, k).shift(k)


def class_of(expr: VarietyExpr, registry: Registry | None = None) -> MotivicClass:
    """Motivic class of ``expr`` in ``registry`` (the default registry if omitted)."""
    reg = registry if registry is not None else _DEFAULT_REGISTRY
    return _eval(expr, reg)


def _eval(e: VarietyExpr, reg: Registry) -> MotivicClass:
    if isinstance(e, Empty):
        return reg.zero()
    if isinstance(e, Point):
        return reg.one()
    if isinstance(e, Affine):
        return reg.poly(LaurentPoly.monomial(e.n))
    if isinstance(e, Projective):
        return reg.poly(LaurentPoly.geometric(e.n + 1))
    if isinstance(e, Torus):
        return reg.poly((L - 1) ** e.n)
    if isinstance(e, Grassmannian):
        return reg.poly(gaussian_binomial(e.n, e.k))
    if isinstance(e, Scalar):
        return reg.poly(e.value)
    if isinstance(e, Product):
        return _eval(e.left, reg) * _eval(e.right, reg)
    if isinstance(e, DisjointUnion):
        return _eval(e.left, reg) + _eval(e.right, reg)
    if isinstance(e, Difference):
        return _eval(e.left, reg) - _eval(e.right, reg)
    if isinstance(e, Complement):
        e.meta()
        return _eval(e.whole, reg) - _eval(e.closed, reg)
    if isinstance(e, VecBundle):
        return _eval(e.base, reg).scale(LaurentPoly.monomial(e.rank))
    if isinstance(e, ProjBundle):
        return _eval(e.base, reg).scale(LaurentPoly.geometric(e.rank))
    if isinstance(e, BlowUp):
        e.meta()
        center = _eval(e.center, reg)
        return _eval(e.ambient, reg) - center + center.scale(LaurentPoly.geometric(e.codim))
    if isinstance(e, Symbolic):
        return reg.symbol(e.name, e.dimension, e.smooth, e.complete, e.connected)
    raise DomainError(f"unknown expression node {e!r}")


def exceptional_divisor(b: VarietyExpr) -> ProjBundle:
    """The exceptional divisor of a blow-up: the projectivized normal bundle of the center."""
    if not isinstance(b, BlowUp):
        raise DomainError(f"exceptional_divisor needs a blow-up, got {b}")
    return ProjBundle(b.center, b.codim)
