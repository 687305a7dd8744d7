"""The localized Grothendieck ring as formal sums of registered generators.

Generators are free symbols interned in a :class:`Registry`.  The distinguished
generator ``pt`` (the point) is the ring unit, so a class supported on ``pt``
alone is just a Laurent polynomial in ``L``; such classes are called L-pure.

Products of generators either follow a declared reduction (see
:meth:`Registry.declare_product`) or produce a formal product generator
whose factors are kept as a sorted multiset, which makes the product
commutative and associative without any rewriting search.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, RegistryMismatchError, UnresolvedGeneratorError
from .laurent import ONE, LaurentPoly

__all__ = ["GeneratorInfo", "Registry", "MotivicClass", "POINT_ID", "realize", "is_prime_power"]

POINT_ID = 0


@dataclass(frozen=True)
class GeneratorInfo:
    id: int
    name: str
    dimension: int
    smooth: bool
    complete: bool
    connected: bool
    factors: tuple[int, ...] = ()

    @property
    def is_product(self) -> bool:
        return len(self.factors) > 1

    def flags(self) -> str:
        return ("s" if self.smooth else "") + ("c" if self.complete else "") + ("i" if self.connected else "")


class Registry:
    """Interning table of generators plus declared product reductions.

    Interning is guarded by a lock; after :meth:`freeze` no new generators
    (including formal products) may be created.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._gens: list[GeneratorInfo] = []
        self._by_name: dict[str, int] = {}
        self._by_factors: dict[tuple[int, ...], int] = {}
        self._products: dict[tuple[int, int], MotivicClass] = {}
        self._frozen = False
        self._add(GeneratorInfo(POINT_ID, "pt", 0, True, True, True, ()))

    def _add(self, info: GeneratorInfo) -> GeneratorInfo:
        if self._frozen:
            raise DomainError(f"registry is frozen; cannot intern {info.name!r}")
        self._gens.append(info)
        self._by_name[info.name] = info.id
        if info.factors:
            self._by_factors[info.factors] = info.id
        return info

    def freeze(self) -> None:
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    def __len__(self):
        return len(self._gens)

    def __iter__(self):
        return iter(list(self._gens))

    def __getitem__(self, gid: int) -> GeneratorInfo:
        return self._gens[gid]

    @property
    def point(self) -> GeneratorInfo:
        return self._gens[POINT_ID]

    def lookup(self, name: str) -> GeneratorInfo | None:
        gid = self._by_name.get(name)
        return None if gid is None else self._gens[gid]

    def intern(self, name: str, dimension: int, smooth: bool = True, complete: bool = True,
               connected: bool = True) -> GeneratorInfo:
        """Return the atomic generator ``name``, creating it on first use.

        Re-interning a name with different metadata is an error.
        """
        if not isinstance(dimension, int) or dimension < 0:
            raise DomainError(f"generator {name!r}: dimension must be a nonnegative integer")
        if not name or "*" in name:
            raise DomainError(f"invalid generator name {name!r}")
        with self._lock:
            existing = self.lookup(name)
            if existing is not None:
                meta = (existing.dimension, existing.smooth, existing.complete, existing.connected)
                if existing.is_product or meta != (dimension, bool(smooth), bool(complete), bool(connected)):
                    raise DomainError(f"generator {name!r} already registered with different metadata")
                return existing
            gid = len(self._gens)
            return self._add(GeneratorInfo(gid, name, dimension, bool(smooth), bool(complete),
                                           bool(connected), (gid,)))

    def _atoms(self, gid: int) -> tuple[int, ...]:
        return () if gid == POINT_ID else self._gens[gid].factors

    def _product_generator(self, factors: tuple[int, ...]) -> int:
        if not factors:
            return POINT_ID
        if len(factors) == 1:
            return factors[0]
        with self._lock:
            gid = self._by_factors.get(factors)
            if gid is not None:
                return gid
            infos = [self._gens[f] for f in factors]
            gid = len(self._gens)
            self._add(GeneratorInfo(
                gid,
                "*".join(i.name for i in infos),
                sum(i.dimension for i in infos),
                all(i.smooth for i in infos),
                all(i.complete for i in infos),
                all(i.connected for i in infos),
                factors,
            ))
            return gid

    def declare_product(self, g: str | int, h: str | int, value: "MotivicClass") -> None:
        """Record that the product of generators ``g`` and ``h`` reduces to ``value``."""
        gi = self._resolve(g)
        hi = self._resolve(h)
        if value.registry is not self:
            raise RegistryMismatchError("declared product value belongs to another registry")
        if POINT_ID in (gi, hi):
            raise DomainError("the product with the point is fixed by the unit law")
        with self._lock:
            if self._frozen:
                raise DomainError("registry is frozen")
            self._products[(gi, hi)] = value
            self._products[(hi, gi)] = value

    def _resolve(self, g: str | int) -> int:
        if isinstance(g, int):
            if not 0 <= g < len(self._gens):
                raise DomainError(f"unknown generator id {g}")
            return g
        info = self.lookup(g)
        if info is None:
            raise DomainError(f"unknown generator {g!r}")
        return info.id

    def multiply_generators(self, g: int, h: int) -> "MotivicClass":
        if g == POINT_ID:
            return self.generator(h)
        if h == POINT_ID:
            return self.generator(g)
        declared = self._products.get((g, h))
        if declared is not None:
            return declared
        return self.generator(self._product_generator(tuple(sorted(self._atoms(g) + self._atoms(h)))))

    # -- class constructors ------------------------------------------------

    def zero(self) -> "MotivicClass":
        return MotivicClass(self, {})

    def one(self) -> "MotivicClass":
        return MotivicClass(self, {POINT_ID: ONE})

    def poly(self, p: LaurentPoly | int) -> "MotivicClass":
        """The L-pure class ``p * [pt]``."""
        p = LaurentPoly.coerce(p)
        return MotivicClass(self, {POINT_ID: p} if p else {})

    def generator(self, g: str | int | GeneratorInfo) -> "MotivicClass":
        gid = g.id if isinstance(g, GeneratorInfo) else self._resolve(g)
        return MotivicClass(self, {gid: ONE})

    def symbol(self, name: str, dimension: int, smooth: bool = True, complete: bool = True,
               connected: bool = True) -> "MotivicClass":
        return self.generator(self.intern(name, dimension, smooth, complete, connected))


class MotivicClass:
    """An element of the localized Grothendieck ring: ``sum c_g * [g]``."""

    __slots__ = ("registry", "_coeffs", "_hash")

    def __init__(self, registry: Registry, coeffs: Mapping[int, LaurentPoly]):
        self.registry = registry
        self._coeffs = {g: c for g, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, registry: Registry, coeffs: dict[int, LaurentPoly]) -> "MotivicClass":
        # caller guarantees: no zero coefficients
        m = object.__new__(cls)
        m.registry = registry
        m._coeffs = coeffs
        m._hash = None
        return m

    # -- inspection --------------------------------------------------------

    @property
    def coefficients(self) -> dict[int, LaurentPoly]:
        """Generator id to coefficient, in registry order."""
        return {g: self._coeffs[g] for g in sorted(self._coeffs)}

    def coefficient(self, g: str | int) -> LaurentPoly:
        from .laurent import ZERO

        return self._coeffs.get(self.registry._resolve(g), ZERO)

    def support(self) -> list[GeneratorInfo]:
        return [self.registry[g] for g in sorted(self._coeffs)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_l_pure(self) -> bool:
        return all(g == POINT_ID for g in self._coeffs)

    def as_poly(self) -> LaurentPoly:
        if not self.is_l_pure():
            raise UnresolvedGeneratorError(
                self.registry[g].name for g in self._coeffs if g != POINT_ID)
        return self.coefficient(POINT_ID)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.is_l_pure() and self.coefficient(POINT_ID) == other
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self.registry is other.registry and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MotivicClass":
        if type(other) is MotivicClass and other.registry is self.registry:
            return other
        if isinstance(other, MotivicClass):
            if other.registry is not self.registry:
                raise RegistryMismatchError("classes belong to different registries")
            return other
        if isinstance(other, (int, LaurentPoly)):
            return self.registry.poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for g, c in other._coeffs.items():
            out[g] = out[g] + c if g in out else c
        return MotivicClass(self.registry, out)

    __radd__ = __add__

    def __neg__(self):
        return MotivicClass(self.registry, {g: -c for g, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, p: LaurentPoly | int) -> "MotivicClass":
        if type(p) is not LaurentPoly:
            p = LaurentPoly.coerce(p)
        if not p:
            return MotivicClass._raw(self.registry, {})
        # Z[L, 1/L] has no zero divisors, so no coefficient vanishes
        return MotivicClass._raw(self.registry, {g: c * p for g, c in self._coeffs.items()})

    def __mul__(self, other):
        if type(other) is LaurentPoly or isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        reg = self.registry
        a, b = self._coeffs, other._coeffs
        if len(a) == 1 and len(b) == 1 and POINT_ID in a and POINT_ID in b:
            return MotivicClass._raw(reg, {POINT_ID: a[POINT_ID] * b[POINT_ID]})
        out: dict[int, LaurentPoly] = {}
        for g, cg in a.items():
            for h, ch in b.items():
                c = cg * ch
                if g == POINT_ID or h == POINT_ID:
                    prod = {h if g == POINT_ID else g: c}
                else:
                    prod = {k: c * ck for k, ck in reg.multiply_generators(g, h)._coeffs.items()}
                for k, term in prod.items():
                    out[k] = out[k] + term if k in out else term
        return MotivicClass(reg, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.registry.one()
        for _ in range(n):
            result = result * self
        return result

    # -- realizations ------------------------------------------------------

    def euler(self) -> Fraction:
        """Topological Euler characteristic (``L -> 1``)."""
        return realize(self, "euler")

    def point_count(self, q: int) -> Fraction:
        """Number of points over the field with ``q`` elements (``L -> q``)."""
        return realize(self, "point_count", q=q)

    # -- rendering ---------------------------------------------------------

    def render(self, fmt: str = "plain") -> str:
        if fmt == "machine":
            import json

            return json.dumps(self.to_json(), sort_keys=False)
        if not self._coeffs:
            return "0"
        pieces = []
        for g, c in sorted(self._coeffs.items()):
            if g == POINT_ID:
                pieces.append(c.render(fmt))
                continue
            name = self.registry[g].name
            gen = f"[{name}]" if fmt == "plain" else "[" + name.replace("*", r" \times ") + "]"
            sep = "*" if fmt == "plain" else r" \cdot "
            if c == 1:
                text = gen
            elif c == -1:
                text = "-" + gen
            elif c.is_monomial():
                text = c.render(fmt) + sep + gen
            else:
                text = "(" + c.render(fmt) + ")" + sep + gen
            pieces.append(text)
        if len(pieces) > 1 and POINT_ID in self._coeffs and not self._coeffs[POINT_ID].is_monomial():
            pieces[0] = "(" + pieces[0] + ")"
        out = pieces[0]
        for text in pieces[1:]:
            out += " - " + text[1:] if text.startswith("-") else " + " + text
        return out

    def to_json(self) -> dict:
        return {self.registry[g].name: c.to_json() for g, c in sorted(self._coeffs.items())}

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MotivicClass({self.render()!r})"


def is_prime_power(q: int) -> bool:
    if not isinstance(q, int) or q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def realize(c: MotivicClass, measure: str, q: int | None = None) -> Fraction:
    """Apply a realization measure to an L-pure class.

    ``measure`` is ``"euler"`` (``L -> 1``) or ``"point_count"`` (``L -> q``
    for a prime power ``q``).
    """
    poly = c.as_poly()
    if measure == "euler":
        return poly.substitute(1)
    if measure == "point_count":
        if q is None or not is_prime_power(q):
            raise DomainError(f"point_count needs a prime power q, got {q!r}")
        return poly.substitute(q)
    raise DomainError(f"unknown measure {measure!r}")


def sum_classes(registry: Registry, classes: Iterable[MotivicClass]) -> MotivicClass:
    total = registry.zero()
    for c in classes:
        total = total + c
    return total
