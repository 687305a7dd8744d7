"""Relative Grothendieck modules over stratified bases and the six operations.

Everything here lives in a piecewise-trivial model.  A :class:`Base` is a
finite list of strata, each carrying the local dimension of the base along it
and its absolute class.  A :class:`RelClass` assigns a fiber class to every
stratum.  A :class:`StratMap` sends strata to strata and records, for each
source stratum, the class of its fiber over the image stratum.

In this model the operations are:

* ``f_!``: sum over the preimage strata, weighted by the fiber classes;
* ``f^*``: read off the value on the image stratum;
* ``D_S``: ``a(s) -> L^-local_dim(s) * dual_k(a(s))``;
* ``f_* = D f_! D`` and ``f^! = D f^* D``;
* ``A (x) B``: stratum-wise product; ``A [x] B``: product over product strata;
* ``Hom(A, B) = D(A (x) D(B))``, which is ``dual_k(a(s)) * b(s)`` stratum-wise.

>>> from motivic.laurent import L, ONE
>>> S = Base.from_polys("P1", [("a", 1, L), ("p", 1, ONE)])
>>> pushforward_shriek(to_point(S), unit(S)).value("*")
MotivicClass('1 + L')
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .core import MotivicClass, Registry
from .duality import dual_k
from .errors import DomainError
from .laurent import LaurentPoly
from .varieties import default_registry

__all__ = [
    "Stratum", "Base", "RelClass", "StratMap", "unit", "zero", "dualizing_element",
    "identity_map", "to_point", "point_base", "product_base", "product_map", "projection",
    "open_inclusion", "pushforward_shriek", "pullback_star", "pushforward_star",
    "pullback_shriek", "rel_dual", "tensor", "box", "hom", "pullback_square", "total",
    "is_proper",
]

StratumId = Hashable


@dataclass(frozen=True)
class Stratum:
    id: StratumId
    local_dim: int
    cls: MotivicClass


@dataclass(frozen=True)
class Base:
    name: str
    strata: tuple[Stratum, ...]
    registry: Registry = field(default_factory=default_registry, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        seen = set()
        for s in self.strata:
            if s.id in seen:
                raise DomainError(f"base {self.name!r}: duplicate stratum id {s.id!r}")
            seen.add(s.id)
            if not isinstance(s.local_dim, int) or s.local_dim < 0:
                raise DomainError(f"base {self.name!r}: stratum {s.id!r} needs local_dim >= 0")
            if s.cls.registry is not self.registry:
                raise DomainError(f"base {self.name!r}: stratum {s.id!r} uses another registry")
        object.__setattr__(self, "_index", {s.id: s for s in self.strata})

    @classmethod
    def from_polys(cls, name: str, strata: Iterable[tuple[StratumId, int, LaurentPoly | int]],
                   registry: Registry | None = None) -> "Base":
        reg = registry if registry is not None else default_registry()
        return cls(name, tuple(Stratum(i, d, reg.poly(p)) for i, d, p in strata), reg)

    def __getitem__(self, sid) -> Stratum:
        try:
            return self._index[sid]
        except KeyError:
            raise DomainError(f"base {self.name!r} has no stratum {sid!r}") from None

    def __contains__(self, sid):
        return sid in self._index

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    @property
    def ids(self) -> list[StratumId]:
        return [s.id for s in self.strata]


class RelClass:
    """An element of ``M_S``: one fiber class per stratum (absent means zero)."""

    __slots__ = ("base", "_values")

    def __init__(self, base: Base, values: Mapping[StratumId, MotivicClass | LaurentPoly | int] = ()):
        self.base = base
        reg = base.registry
        vals = {}
        for sid, v in dict(values).items():
            base[sid]
            if not isinstance(v, MotivicClass):
                v = reg.poly(v)
            elif v.registry is not reg:
                raise DomainError("fiber class uses a different registry than its base")
            if v:
                vals[sid] = v
        self._values = {sid: vals[sid] for sid in base.ids if sid in vals}

    @classmethod
    def _raw(cls, base: Base, values: dict) -> "RelClass":
        # caller guarantees: keys are strata of base, values are nonzero classes of its registry
        r = object.__new__(cls)
        r.base = base
        r._values = values
        return r

    def value(self, sid) -> MotivicClass:
        self.base[sid]
        return self._values.get(sid, self.base.registry.zero())

    @property
    def values(self) -> dict[StratumId, MotivicClass]:
        return dict(self._values)

    def is_zero(self) -> bool:
        return not self._values

    def _check(self, other: "RelClass"):
        if not isinstance(other, RelClass):
            return False
        if other.base != self.base:
            raise DomainError(f"base mismatch: {self.base.name!r} vs {other.base.name!r}")
        return True

    def __eq__(self, other):
        if not isinstance(other, RelClass):
            return NotImplemented
        return self.base == other.base and self._values == other._values

    def __hash__(self):
        return hash((self.base, tuple(self._values.items())))

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return RelClass(self.base, {s.id: self.value(s.id) + other.value(s.id) for s in self.base})

    def __neg__(self):
        return RelClass(self.base, {k: -v for k, v in self._values.items()})

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, c: MotivicClass | LaurentPoly | int) -> "RelClass":
        """Multiply by a scalar from the absolute ring."""
        return RelClass(self.base, {k: v * c for k, v in self._values.items()})

    def __mul__(self, c):
        if isinstance(c, (MotivicClass, LaurentPoly, int)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def render(self, fmt: str = "plain") -> str:
        if fmt == "machine":
            import json

            return json.dumps({"base": self.base.name,
                               "values": {str(k): v.to_json() for k, v in self._values.items()}})
        body = ", ".join(f"{k}: {v.render(fmt)}" for k, v in self._values.items())
        return f"{{{body}}}_{self.base.name}"

    def __repr__(self):
        return f"RelClass({self.render()})"


@dataclass(frozen=True)
class StratMap:
    """A stratified map with declared piecewise-trivial fibers.

    Construction checks ``cls(s) == cls(assignment[s]) * rel_fiber[s]`` for
    every source stratum and, if ``smooth_rel_dim`` is given, that local
    dimensions differ by exactly that amount.
    """

    source: Base
    target: Base
    assignment: Mapping[StratumId, StratumId]
    rel_fiber: Mapping[StratumId, MotivicClass]
    smooth_rel_dim: int | None = None
    name: str = field(default="f", compare=False)

    def __post_init__(self):
        reg = self.source.registry
        if self.target.registry is not reg:
            raise DomainError(f"map {self.name!r}: source and target use different registries")
        assignment = dict(self.assignment)
        fibers = {k: (v if isinstance(v, MotivicClass) else reg.poly(v))
                  for k, v in dict(self.rel_fiber).items()}
        if set(assignment) != set(self.source.ids) or set(fibers) != set(self.source.ids):
            raise DomainError(f"map {self.name!r}: assignment and fibers must cover the source strata")
        m = self.smooth_rel_dim
        if m is not None and (not isinstance(m, int) or m < 0):
            raise DomainError(f"map {self.name!r}: smooth relative dimension must be >= 0")
        for s in self.source:
            t = self.target[assignment[s.id]]
            if s.cls != t.cls * fibers[s.id]:
                raise DomainError(
                    f"map {self.name!r}: stratum {s.id!r} has class {s.cls}, but its image "
                    f"{t.id!r} times the fiber gives {t.cls * fibers[s.id]}")
            if m is not None and s.local_dim != t.local_dim + m:
                raise DomainError(
                    f"map {self.name!r}: stratum {s.id!r} has local_dim {s.local_dim}, "
                    f"smooth of relative dimension {m} needs {t.local_dim + m}")
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "rel_fiber", fibers)

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.assignment.items())))

    def relative_dim(self, sid) -> int:
        return self.source[sid].local_dim - self.target[self.assignment[sid]].local_dim


# -- constructors ------------------------------------------------------------

def unit(base: Base) -> RelClass:
    """``1_S``: the unit class on every stratum."""
    return RelClass(base, {s.id: base.registry.one() for s in base})


def zero(base: Base) -> RelClass:
    return RelClass(base, {})


def point_base(registry: Registry | None = None, name: str = "pt") -> Base:
    reg = registry if registry is not None else default_registry()
    return Base(name, (Stratum("*", 0, reg.one()),), reg)


def identity_map(base: Base) -> StratMap:
    one = base.registry.one()
    return StratMap(base, base, {s.id: s.id for s in base}, {s.id: one for s in base}, 0, name="id")


def to_point(base: Base, target: Base | None = None) -> StratMap:
    """The structure map ``S -> pt``; the fiber over the point is the stratum itself."""
    target = target if target is not None else point_base(base.registry)
    if len(target) != 1:
        raise DomainError("to_point needs a one-stratum target")
    (t,) = target.strata
    if t.cls != base.registry.one() or t.local_dim != 0:
        raise DomainError("to_point needs the point base as target")
    dims = {s.local_dim for s in base}
    m = dims.pop() if len(dims) == 1 else None
    return StratMap(base, target, {s.id: t.id for s in base}, {s.id: s.cls for s in base}, m,
                    name=f"{base.name}->pt")


def open_inclusion(sub: Base, whole: Base) -> StratMap:
    """Inclusion of a union of strata: injective, trivial fibers, relative dimension 0."""
    one = whole.registry.one()
    return StratMap(sub, whole, {s.id: s.id for s in sub}, {s.id: one for s in sub}, 0,
                    name=f"{sub.name}->{whole.name}")


def product_base(S: Base, T: Base) -> Base:
    if S.registry is not T.registry:
        raise DomainError("product of bases over different registries")
    return _product_base(S, T, id(S.registry))


@lru_cache(maxsize=1024)
def _product_base(S: Base, T: Base, _registry_id: int) -> Base:
    strata = tuple(Stratum((s.id, t.id), s.local_dim + t.local_dim, s.cls * t.cls)
                   for s in S for t in T)
    return Base(f"{S.name}x{T.name}", strata, S.registry)


def product_map(f: StratMap, g: StratMap) -> StratMap:
    src, tgt = product_base(f.source, g.source), product_base(f.target, g.target)
    assignment = {(s, t): (f.assignment[s], g.assignment[t]) for s, t in src.ids}
    fibers = {(s, t): f.rel_fiber[s] * g.rel_fiber[t] for s, t in src.ids}
    m = None
    if f.smooth_rel_dim is not None and g.smooth_rel_dim is not None:
        m = f.smooth_rel_dim + g.smooth_rel_dim
    return StratMap(src, tgt, assignment, fibers, m, name=f"{f.name}x{g.name}")


def projection(S: Base, T: Base) -> StratMap:
    """First projection ``S x T -> S``."""
    src = product_base(S, T)
    dims = {t.local_dim for t in T}
    m = dims.pop() if len(dims) == 1 else None
    return StratMap(src, S, {(s, t): s for s, t in src.ids},
                    {(s, t): T[t].cls for s, t in src.ids}, m, name=f"p_{S.name}")


# -- the operations ----------------------------------------------------------

def _on(base: Base, a: RelClass, what: str):
    if a.base != base:
        raise DomainError(f"{what}: class lives on {a.base.name!r}, expected {base.name!r}")


def pushforward_shriek(f: StratMap, a: RelClass) -> RelClass:
    """``f_!``: integrate along the fibers."""
    _on(f.source, a, "f_!")
    out = {t.id: f.target.registry.zero() for t in f.target}
    for sid, v in a.values.items():
        tid = f.assignment[sid]
        out[tid] = out[tid] + f.rel_fiber[sid] * v
    return RelClass(f.target, out)


def pullback_star(f: StratMap, b: RelClass) -> RelClass:
    _on(f.target, b, "f^*")
    return RelClass(f.source, {s.id: b.value(f.assignment[s.id]) for s in f.source})


def rel_dual(a: RelClass) -> RelClass:
    """``D_S``, fiberwise ``L^-local_dim(s) * dual_k``; an involution."""
    base = a.base
    return RelClass._raw(base, {sid: dual_k(v, -base[sid].local_dim) for sid, v in a._values.items()})


def pushforward_star(f: StratMap, a: RelClass) -> RelClass:
    """``f_* = D f_! D``."""
    return rel_dual(pushforward_shriek(f, rel_dual(a)))


def pullback_shriek(f: StratMap, b: RelClass) -> RelClass:
    """``f^! = D f^* D``."""
    return rel_dual(pullback_star(f, rel_dual(b)))


def tensor(a: RelClass, b: RelClass) -> RelClass:
    if a.base != b.base:
        raise DomainError(f"tensor: base mismatch {a.base.name!r} vs {b.base.name!r}")
    bv = b._values
    out = {}
    for sid, v in a._values.items():
        if sid in bv:
            p = v * bv[sid]
            if p:
                out[sid] = p
    return RelClass._raw(a.base, out)


def box(a: RelClass, b: RelClass) -> RelClass:
    """Exterior product over ``S x T``."""
    P = product_base(a.base, b.base)
    out = {}
    for s in a.base.ids:
        va = a._values.get(s)
        if va is None:
            continue
        for t in b.base.ids:
            vb = b._values.get(t)
            if vb is not None:
                p = va * vb
                if p:
                    out[(s, t)] = p
    return RelClass._raw(P, out)


def hom(a: RelClass, b: RelClass) -> RelClass:
    """Internal Hom, ``D(A (x) D(B))``, evaluated stratum-wise as ``dual_k(a) * b``."""
    if a.base != b.base:
        raise DomainError(f"hom: base mismatch {a.base.name!r} vs {b.base.name!r}")
    bv = b._values
    return RelClass._raw(a.base, {sid: dual_k(v) * bv[sid] for sid, v in a._values.items() if sid in bv})


def dualizing_element(base: Base) -> RelClass:
    return rel_dual(unit(base))


def total(a: RelClass) -> MotivicClass:
    """Push forward to the point: ``sum_s cls(s) * a(s)``."""
    out = a.base.registry.zero()
    for sid, v in a.values.items():
        out = out + a.base[sid].cls * v
    return out


def is_proper(f: StratMap) -> bool:
    """The model's properness criterion: every fiber is self-dual up to its dimension shift."""
    for sid, F in f.rel_fiber.items():
        try:
            if dual_k(F) != F.scale(LaurentPoly.monomial(-f.relative_dim(sid))):
                return False
        except DomainError:
            return False
    return True


def pullback_square(f: StratMap, pi_prime: StratMap) -> tuple[Base, StratMap, StratMap]:
    """Fiber product of ``f: S -> S'`` and ``pi': T' -> S'``.

    Returns ``(T, g, pi)`` with ``g: T -> T'`` and ``pi: T -> S``.  Strata of
    ``T`` are the pairs ``(s, t')`` over a common stratum of ``S'``.
    """
    if f.target != pi_prime.target:
        raise DomainError("pullback_square: maps must share their target")
    target = f.target
    strata = []
    for s in f.source:
        for tp in pi_prime.source:
            u = f.assignment[s.id]
            if pi_prime.assignment[tp.id] != u:
                continue
            d = s.local_dim + tp.local_dim - target[u].local_dim
            if d < 0:
                raise DomainError(f"pullback_square: negative local dimension on ({s.id!r}, {tp.id!r})")
            strata.append(Stratum((s.id, tp.id), d, s.cls * pi_prime.rel_fiber[tp.id]))
    T = Base(f"{f.source.name}x_{target.name}{pi_prime.source.name}", tuple(strata), target.registry)
    g = StratMap(T, pi_prime.source, {st.id: st.id[1] for st in T},
                 {st.id: f.rel_fiber[st.id[0]] for st in T}, f.smooth_rel_dim, name="g")
    pi = StratMap(T, f.source, {st.id: st.id[0] for st in T},
                  {st.id: pi_prime.rel_fiber[st.id[1]] for st in T}, pi_prime.smooth_rel_dim, name="pi")
    return T, g, pi

