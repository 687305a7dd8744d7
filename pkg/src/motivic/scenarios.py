"""Scenario files, random scenarios, and the identity suite of the six operations.

A scenario is a bundle of named bases, maps, relative classes and scalars.
Each identity in :data:`IDENTITIES` is checked on every combination of
scenario objects it applies to.

Scenario file syntax (blocks start in column 0, their rows are indented)::

    # the projective line over a point
    base P1
      a 1 : A(1)
      p 1 : pt
    base pt
      * 0 : pt
    map f : P1 -> pt smooth 1
      a -> * : A(1)
      p -> * : pt
    class one : P1
      a : 1
      p : 1
    scalar L^-1 + 1

Base rows are ``<id> <local_dim> : <class>``, map rows ``<id> -> <id> : <fiber>``,
class rows ``<id> : <class>``.  Classes use the class-expression syntax.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

from .core import MotivicClass, Registry
from .duality import dual_k
from .errors import DomainError, ParseError
from .laurent import LaurentPoly
from .parser import parse_class
from .relative import (
    Base, RelClass, StratMap, Stratum, box, dualizing_element, hom, is_proper, open_inclusion,
    product_map, projection, pullback_shriek, pullback_square, pullback_star, pushforward_shriek,
    pushforward_star, rel_dual, tensor, unit,
)

__all__ = [
    "Scenario", "ScenarioError", "parse_scenario", "load_scenario", "random_scenario",
    "IDENTITIES", "check_identity", "check_all", "IdentityReport",
]


@dataclass
class Scenario:
    registry: Registry
    bases: dict[str, Base] = field(default_factory=dict)
    maps: dict[str, StratMap] = field(default_factory=dict)
    classes: dict[str, RelClass] = field(default_factory=dict)
    scalars: list[MotivicClass] = field(default_factory=list)

    def classes_on(self, base: Base) -> list[RelClass]:
        return [c for c in self.classes.values() if c.base == base]


class ScenarioError(DomainError):
    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


# -- file format -------------------------------------------------------------

_BASE = re.compile(r"base\s+(\S+)\s*$")
_MAP = re.compile(r"map\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)(?:\s+smooth\s+(\d+))?\s*$")
_CLASS = re.compile(r"class\s+(\S+)\s*:\s*(\S+)\s*$")
_SCALAR = re.compile(r"scalar\s+(.+)$")
_BASE_ROW = re.compile(r"\s+(\S+)\s+(\d+)\s*:\s*(.+)$")
_MAP_ROW = re.compile(r"\s+(\S+)\s*->\s*(\S+)\s*:\s*(.+)$")
_CLASS_ROW = re.compile(r"\s+(\S+)\s*:\s*(.+)$")


def parse_scenario(text: str, registry: Registry | None = None) -> Scenario:
    reg = registry if registry is not None else Registry()
    sc = Scenario(reg)
    blocks = []  # (kind, header match, header line, rows[(line, match)])
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            for kind, rx in (("base", _BASE), ("map", _MAP), ("class", _CLASS), ("scalar", _SCALAR)):
                m = rx.match(line)
                if m:
                    blocks.append((kind, m, lineno, []))
                    break
            else:
                raise ParseError("expected a 'base', 'map', 'class' or 'scalar' header", lineno, 1, raw)
            continue
        if not blocks or blocks[-1][0] == "scalar":
            raise ParseError("indented row outside a block", lineno, 1, raw)
        kind = blocks[-1][0]
        rx = {"base": _BASE_ROW, "map": _MAP_ROW, "class": _CLASS_ROW}[kind]
        m = rx.match(line)
        if m is None:
            raise ParseError(f"malformed {kind} row", lineno, 1, raw)
        blocks[-1][3].append((lineno, m))

    def cls(m, group, lineno):
        return parse_class(m.group(group), reg, line=lineno, column=m.start(group) + 1)

    def wrap(fn, lineno):
        try:
            return fn()
        except DomainError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(str(exc), lineno) from None

    def lookup_base(name, lineno):
        if name not in sc.bases:
            raise ScenarioError(f"unknown base {name!r}", lineno)
        return sc.bases[name]

    for kind, head, lineno, rows in blocks:
        name = head.group(1)
        if kind == "scalar":
            sc.scalars.append(cls(head, 1, lineno))
            continue
        table = {"base": sc.bases, "map": sc.maps, "class": sc.classes}[kind]
        if name in table:
            raise ScenarioError(f"duplicate {kind} {name!r}", lineno)
        if kind == "base":
            strata = tuple(Stratum(m.group(1), int(m.group(2)), cls(m, 3, ln)) for ln, m in rows)
            sc.bases[name] = wrap(lambda: Base(name, strata, reg), lineno)
        elif kind == "map":
            src, tgt = lookup_base(head.group(2), lineno), lookup_base(head.group(3), lineno)
            smooth = int(head.group(4)) if head.group(4) is not None else None
            assignment = {m.group(1): m.group(2) for _, m in rows}
            fibers = {m.group(1): cls(m, 3, ln) for ln, m in rows}
            sc.maps[name] = wrap(lambda: StratMap(src, tgt, assignment, fibers, smooth, name=name), lineno)
        else:
            base = lookup_base(head.group(2), lineno)
            values = {}
            for ln, m in rows:
                if m.group(1) not in base:
                    raise ScenarioError(f"base {base.name!r} has no stratum {m.group(1)!r}", ln)
                values[m.group(1)] = cls(m, 2, ln)
            sc.classes[name] = wrap(lambda: RelClass(base, values), lineno)
    return sc


def load_scenario(path: str | Path, registry: Registry | None = None) -> Scenario:
    return parse_scenario(Path(path).read_text(), registry)


# -- random scenarios --------------------------------------------------------

def _rand_poly(rng: random.Random, nonzero: bool = False) -> LaurentPoly:
    while True:
        terms = {rng.randint(-2, 3): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))}
        p = LaurentPoly(terms)
        if p or not nonzero:
            return p


def _rand_base(rng, reg, name, n_strata) -> Base:
    strata = []
    for i in range(n_strata):
        strata.append(Stratum(f"{name}{i}", rng.randint(0, 2), reg.poly(_rand_poly(rng, nonzero=True))))
    return Base(name, tuple(strata), reg)


def _rand_map(rng, reg, target: Base, name: str, src_name: str, n_strata: int,
              smooth: bool, proper: bool) -> StratMap:
    m = rng.randint(0, 2) if smooth else None
    strata, assignment, fibers = [], {}, {}
    for i in range(n_strata):
        t = rng.choice(target.strata)
        rel = m if m is not None else rng.randint(0, 2)
        if proper:
            fiber = reg.poly(LaurentPoly.geometric(rel + 1))
        else:
            fiber = reg.poly(_rand_poly(rng, nonzero=True))
        sid = f"{src_name}{i}"
        strata.append(Stratum(sid, t.local_dim + rel, t.cls * fiber))
        assignment[sid] = t.id
        fibers[sid] = fiber
    source = Base(src_name, tuple(strata), reg)
    return StratMap(source, target, assignment, fibers, m, name=name)


def _rand_class(rng, base: Base) -> RelClass:
    return RelClass(base, {s.id: _rand_poly(rng) for s in base})


def random_scenario(rng: random.Random | int, registry: Registry | None = None,
                    max_strata: int = 5) -> Scenario:
    """A small random piecewise-trivial scenario with L-pure classes.

    Contains a target base ``U``, two maps into it (``f`` from ``S``, ``h``
    from ``V``), an open inclusion ``j`` of some strata of ``U``, two classes
    on every base and two scalars.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    reg = registry if registry is not None else Registry()
    sc = Scenario(reg)
    U = _rand_base(rng, reg, "U", rng.randint(1, min(3, max_strata)))
    f = _rand_map(rng, reg, U, "f", "S", rng.randint(1, max_strata),
                  smooth=rng.random() < 0.5, proper=rng.random() < 0.5)
    h = _rand_map(rng, reg, U, "h", "V", rng.randint(1, max_strata),
                  smooth=rng.random() < 0.5, proper=rng.random() < 0.5)
    kept = [s for s in U if rng.random() < 0.7] or [U.strata[0]]
    W = Base("W", tuple(kept), reg)
    j = open_inclusion(W, U)
    for base in (U, f.source, h.source, W):
        sc.bases[base.name] = base
    sc.maps.update(f=f, h=h, j=j)
    for base in sc.bases.values():
        for k in range(2):
            sc.classes[f"{base.name.lower()}{k}"] = _rand_class(rng, base)
    sc.scalars = [reg.poly(_rand_poly(rng)) for _ in range(2)]
    return sc


# -- identities --------------------------------------------------------------

Check = Iterator[tuple[str, bool]]


def _projection_formula(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        for A in sc.classes_on(f.target):
            for B in sc.classes_on(f.source):
                lhs = pushforward_shriek(f, tensor(pullback_star(f, A), B))
                yield fname, lhs == tensor(A, pushforward_shriek(f, B))


def _map_pairs(sc: Scenario):
    return itertools.product(sc.maps.items(), repeat=2)


def _exterior_push(sc: Scenario) -> Check:
    for (fn, f), (gn, g) in _map_pairs(sc):
        fg = product_map(f, g)
        for A in sc.classes_on(f.source):
            for B in sc.classes_on(g.source):
                lhs = pushforward_shriek(fg, box(A, B))
                yield f"{fn}x{gn}", lhs == box(pushforward_shriek(f, A), pushforward_shriek(g, B))


def _exterior_pull(sc: Scenario) -> Check:
    for (fn, f), (gn, g) in _map_pairs(sc):
        fg = product_map(f, g)
        for C in sc.classes_on(f.target):
            for D in sc.classes_on(g.target):
                lhs = pullback_star(fg, box(C, D))
                yield f"{fn}x{gn}", lhs == box(pullback_star(f, C), pullback_star(g, D))


def _squares(sc: Scenario):
    for (fn, f), (pn, p) in _map_pairs(sc):
        if f.target == p.target:
            T, g, pi = pullback_square(f, p)
            yield f"{fn},{pn}", f, p, g, pi


def _base_change_shriek(sc: Scenario) -> Check:
    for label, f, p, g, pi in _squares(sc):
        for A in sc.classes_on(f.source):
            yield label, pushforward_shriek(g, pullback_star(pi, A)) == pullback_star(p, pushforward_shriek(f, A))


def _base_change_star(sc: Scenario) -> Check:
    for label, f, p, g, pi in _squares(sc):
        for A in sc.classes_on(f.source):
            yield label, pushforward_star(g, pullback_shriek(pi, A)) == pullback_shriek(p, pushforward_star(f, A))


def _base_change_mixed(sc: Scenario) -> Check:
    for label, f, p, g, pi in _squares(sc):
        if p.smooth_rel_dim is None and not is_proper(f):
            continue
        for A in sc.classes_on(f.source):
            yield label, pushforward_star(g, pullback_star(pi, A)) == pullback_star(p, pushforward_star(f, A))


def _dual_involution(sc: Scenario) -> Check:
    for name, A in sc.classes.items():
        yield name, rel_dual(rel_dual(A)) == A


def _dual_linearity(sc: Scenario) -> Check:
    for name, A in sc.classes.items():
        for c in sc.scalars:
            yield f"{name},{c}", rel_dual(A.scale(c)) == rel_dual(A).scale(dual_k(c))


def _box_tensor(sc: Scenario) -> Check:
    for S, T in itertools.product(sc.bases.values(), repeat=2):
        pairs_s = itertools.combinations_with_replacement(sc.classes_on(S), 2)
        pairs_t = list(itertools.combinations_with_replacement(sc.classes_on(T), 2))
        for (A, B), (C, D) in itertools.product(pairs_s, pairs_t):
            yield f"{S.name},{T.name}", tensor(box(A, C), box(B, D)) == box(tensor(A, B), tensor(C, D))


def _box_dual(sc: Scenario) -> Check:
    for S, T in itertools.product(sc.bases.values(), repeat=2):
        for A in sc.classes_on(S):
            for B in sc.classes_on(T):
                yield f"{S.name},{T.name}", rel_dual(box(A, B)) == box(rel_dual(A), rel_dual(B))


def _hom_push_star(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        for A in sc.classes_on(f.target):
            for B in sc.classes_on(f.source):
                lhs = hom(A, pushforward_star(f, B))
                yield fname, lhs == pushforward_star(f, hom(pullback_star(f, A), B))


def _hom_pull_shriek(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        for A, B in itertools.product(sc.classes_on(f.target), repeat=2):
            lhs = hom(pullback_star(f, A), pullback_shriek(f, B))
            yield fname, lhs == pullback_shriek(f, hom(A, B))


def _hom_push_shriek(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        for A in sc.classes_on(f.source):
            for B in sc.classes_on(f.target):
                lhs = pushforward_star(f, hom(A, pullback_shriek(f, B)))
                yield fname, lhs == hom(pushforward_shriek(f, A), B)


def _hom_tensor(sc: Scenario) -> Check:
    for base in sc.bases.values():
        for A, B, C in itertools.product(sc.classes_on(base), repeat=3):
            yield base.name, hom(A, hom(B, C)) == hom(tensor(A, B), C)


def _hom_projection(sc: Scenario) -> Check:
    for S, T in itertools.product(sc.bases.values(), repeat=2):
        p = projection(S, T)
        for A, B in itertools.product(sc.classes_on(S), repeat=2):
            yield f"{S.name},{T.name}", hom(pullback_star(p, A), pullback_star(p, B)) == pullback_star(p, hom(A, B))


def _projection_pullback(sc: Scenario) -> Check:
    for S, T in itertools.product(sc.bases.values(), repeat=2):
        p = projection(S, T)
        for A in sc.classes_on(S):
            yield f"{S.name},{T.name}", pullback_star(p, A) == box(A, unit(T))


def _hom_dualizing(sc: Scenario) -> Check:
    for name, A in sc.classes.items():
        yield name, hom(A, dualizing_element(A.base)) == rel_dual(A)


def _smooth_pullback(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        if f.smooth_rel_dim is None:
            continue
        shift = LaurentPoly.monomial(f.smooth_rel_dim)
        for B in sc.classes_on(f.target):
            yield fname, pullback_star(f, B) == pullback_shriek(f, B).scale(shift)


def _proper_pushforward(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        if not is_proper(f):
            continue
        for A in sc.classes_on(f.source):
            yield fname, pushforward_star(f, A) == pushforward_shriek(f, A)


def _open_embedding(sc: Scenario) -> Check:
    for fname, f in sc.maps.items():
        injective = len(set(f.assignment.values())) == len(f.assignment)
        trivial = all(F == 1 for F in f.rel_fiber.values())
        if not (injective and trivial and f.smooth_rel_dim == 0):
            continue
        for B in sc.classes_on(f.target):
            yield fname, pullback_shriek(f, B) == pullback_star(f, B)


IDENTITIES: dict[str, Callable[[Scenario], Check]] = {
    "projection_formula": _projection_formula,
    "exterior_push": _exterior_push,
    "exterior_pull": _exterior_pull,
    "base_change_shriek": _base_change_shriek,
    "base_change_star": _base_change_star,
    "base_change_mixed": _base_change_mixed,
    "dual_involution": _dual_involution,
    "dual_linearity": _dual_linearity,
    "box_tensor": _box_tensor,
    "box_dual": _box_dual,
    "hom_push_star": _hom_push_star,
    "hom_pull_shriek": _hom_pull_shriek,
    "hom_push_shriek": _hom_push_shriek,
    "hom_tensor": _hom_tensor,
    "hom_projection": _hom_projection,
    "hom_dualizing": _hom_dualizing,
    "projection_pullback": _projection_pullback,
    "smooth_pullback": _smooth_pullback,
    "proper_pushforward": _proper_pushforward,
    "open_embedding": _open_embedding,
}


@dataclass
class IdentityReport:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        if self.failures:
            return f"FAIL {self.name} ({len(self.failures)}/{self.checked} failed: {', '.join(self.failures[:5])})"
        if not self.checked:
            return f"SKIP {self.name} (no applicable instances)"
        return f"PASS {self.name} ({self.checked} instance{'s' if self.checked != 1 else ''})"


def check_identity(sc: Scenario, name: str) -> IdentityReport:
    if name not in IDENTITIES:
        raise DomainError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    report = IdentityReport(name)
    for label, ok in IDENTITIES[name](sc):
        report.checked += 1
        if not ok:
            report.failures.append(label)
    return report


def check_all(sc: Scenario) -> list[IdentityReport]:
    return [check_identity(sc, name) for name in IDENTITIES]
