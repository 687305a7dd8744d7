"""Duality involution and the Euler characteristic of pairs.

``dual_k`` sends ``L`` to ``L^-1`` and the class of a smooth complete
connected generator ``X`` to ``L^-dim X [X]``.

The Euler characteristic of a smooth connected ``X`` is computed from a
simple normal crossings completion ``(Xbar, D)``::

    chi(X) = sum_l (-L)^l [D^(l)]

where ``D^(l)`` is the normalization of the ``l``-fold intersections of the
boundary components (``D^(0) = Xbar``).  It must agree with
``L^dim X * dual_k([X])``; :func:`verify_prespaar` checks exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import MotivicClass, Registry
from .errors import DomainError, NotDualizableError
from .laurent import LaurentPoly
from .varieties import DisjointUnion, Symbolic, VarietyExpr, class_of, default_registry

__all__ = [
    "dual_k", "SNCData", "snc_problems", "chi_ordinary", "verify_prespaar", "PrespaarResult", "pair_chi",
    "gysin_holds",
]


def dual_k(c: MotivicClass, shift: int = 0) -> MotivicClass:
    """Apply the duality involution of the localized Grothendieck ring.

    With ``shift`` the result is multiplied by ``L^shift`` in the same pass.
    """
    reg = c.registry
    out = {}
    for g, coeff in c._coeffs.items():
        info = reg[g]
        if not info.smooth:
            raise NotDualizableError(info.name, "not smooth")
        if not info.complete:
            raise NotDualizableError(info.name, "not complete")
        if not info.connected:
            raise NotDualizableError(info.name, "not connected")
        k = shift - info.dimension
        out[g] = LaurentPoly._raw({k - e: v for e, v in coeff._terms.items()})
    return MotivicClass._raw(reg, out)


@dataclass(frozen=True)
class SNCData:
    """A smooth connected ``interior`` with an SNC completion ``ambient``.

    ``levels[l]`` is ``D^(l)``; ``levels[0]`` must be the ambient itself.
    Missing trailing levels are empty.
    """

    interior: VarietyExpr
    ambient: VarietyExpr
    levels: tuple[VarietyExpr, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        problems = self.problems()
        if problems:
            raise DomainError(problems[0][1])

    @property
    def n(self) -> int:
        return self.ambient.meta().dim

    def problems(self) -> list[tuple[str, str]]:
        return snc_problems(self.interior, self.ambient, self.levels)


def snc_problems(interior: VarietyExpr, ambient: VarietyExpr,
                 levels: tuple[VarietyExpr, ...]) -> list[tuple[str, str]]:
    """Invariant violations as ``(field, message)`` pairs; empty when valid."""
    try:
        return _problems(interior, ambient, levels)
    except DomainError as exc:
        return [("levels", str(exc))]


def _problems(interior, ambient, levels):
    out = []
    amb = ambient.meta()
    if amb.dim is None:
        return [("ambient", "the ambient variety is empty")]
    if not (amb.smooth and amb.complete):
        out.append(("ambient", f"ambient {ambient} must be smooth and complete"))
    inner = interior.meta()
    if inner.dim != amb.dim:
        out.append(("interior", f"interior has dimension {inner.dim}, ambient has {amb.dim}"))
    if not inner.smooth:
        out.append(("interior", f"interior {interior} must be smooth"))
    if isinstance(interior, DisjointUnion) or (
            isinstance(interior, Symbolic) and not interior.connected):
        out.append(("interior", "interior must be connected; "
                                "supply one SNC datum per connected component"))
    if not levels or levels[0] != ambient:
        out.append(("levels", "levels[0] must be the ambient expression"))
    if len(levels) > amb.dim + 1:
        out.append(("levels", f"at most {amb.dim + 1} levels allowed for dimension {amb.dim}"))
    for l, lev in enumerate(levels):
        m = lev.meta()
        if m.dim is None:
            continue
        if m.dim != amb.dim - l:
            out.append(("levels", f"levels[{l}] has dimension {m.dim}, expected {amb.dim - l}"))
        if not (m.smooth and m.complete):
            out.append(("levels", f"levels[{l}] must be smooth and complete"))
    return out


def chi_ordinary(d: SNCData, registry: Registry | None = None) -> MotivicClass:
    """``sum_l (-L)^l [D^(l)]``."""
    reg = registry if registry is not None else default_registry()
    total = reg.zero()
    for l, level in enumerate(d.levels):
        total = total + class_of(level, reg).scale(LaurentPoly.monomial(l, (-1) ** l))
    return total


@dataclass(frozen=True)
class PrespaarResult:
    ok: bool
    chi: MotivicClass
    dual_side: MotivicClass

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        return f"{verdict}: chi = {self.chi}, L^dim * D([X]) = {self.dual_side}"


def verify_prespaar(d: SNCData, registry: Registry | None = None) -> PrespaarResult:
    """Compare ``chi_ordinary(d)`` with ``L^dim X * dual_k([X])``."""
    reg = registry if registry is not None else default_registry()
    chi = chi_ordinary(d, reg)
    other = dual_k(class_of(d.interior, reg)).scale(LaurentPoly.monomial(d.interior.meta().dim))
    return PrespaarResult(chi == other, chi, other)


def pair_chi(dx: SNCData | None, dy: SNCData | None,
             registry: Registry | None = None) -> MotivicClass:
    """``chi(X, Y) = chi(X) - chi(Y)``; ``None`` stands for the empty variety."""
    reg = registry if registry is not None else default_registry()
    cx = chi_ordinary(dx, reg) if dx is not None else reg.zero()
    cy = chi_ordinary(dy, reg) if dy is not None else reg.zero()
    return cx - cy


def gysin_holds(whole: SNCData, divisor: SNCData, open_part: SNCData,
                registry: Registry | None = None) -> bool:
    """``chi(X - D) == chi(X) - L * chi(D)`` for the supplied completions."""
    reg = registry if registry is not None else default_registry()
    lhs = chi_ordinary(open_part, reg)
    rhs = chi_ordinary(whole, reg) - chi_ordinary(divisor, reg).scale(LaurentPoly.monomial(1))
    return lhs == rhs


def complete_snc(x: VarietyExpr, name: str = "") -> SNCData:
    """A complete smooth variety is its own completion with empty boundary."""
    return SNCData(x, x, (x,), name=name)

