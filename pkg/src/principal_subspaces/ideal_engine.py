"""Graded pieces of the left ideals I_Lambda of U(n-bar).

Everything is computed in the quotient N = U(n-bar) / U(n-bar) n-bar_+, which
is identified with U(n-bar_-) through the PBW projection.  By PBW,
``U(n-bar) = U(n-bar_-) U(n-bar_+)``, so the image of a left ideal generated by
a set G is ``U(n-bar_-) D`` where ``D = U(n-bar_+) . G`` is the descent
closure.  ``D`` is computed with a worklist (apply x_beta(m), m >= 0, project,
reduce); the ideal pieces are then built bottom-up by left multiplication with
single negative generators.

Only R-truncations of weight <= t_max are seeded.  Since the truncated ideal
is a subspace of the true one, a truncated quotient dimension is an upper
bound; equality with the lattice-side dimension therefore settles a
component.  Enlarging t_max never decreases a rank.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .linalg import RowSpace
from .scalars import Q
from .upbw import (AffineWeight, AlgElem, GradedIndex, LoopAlgebra, LoopGen, Monomial,
                   loop_algebra, r_generator)


@dataclass(frozen=True)
class IdealSpec:
    """Generators of a left ideal I_{k Lambda_0} + sum_alpha U x_alpha(-1)^e_alpha."""

    n: int
    k: int
    powers: tuple[tuple[int, int], ...] = ()
    weight: AffineWeight | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "powers", tuple(sorted(self.powers)))

    @classmethod
    def from_weight(cls, weight: AffineWeight) -> "IdealSpec":
        alg = loop_algebra(weight.rank)
        powers = tuple((idx, weight.exponent(r))
                       for idx, r in enumerate(alg.rs.positive_roots))
        return cls(weight.rank, weight.level, powers, weight)

    @classmethod
    def vacuum(cls, n: int, k: int, extra: dict | None = None) -> "IdealSpec":
        """I_{k Lambda_0} plus optional powers given as {root coords: exponent}."""
        alg = loop_algebra(n)
        powers = tuple((alg.root_index(r), e) for r, e in (extra or {}).items())
        return cls(n, k, powers)

    @property
    def alg(self) -> LoopAlgebra:
        return loop_algebra(self.n)

    def key(self) -> str:
        if self.weight is not None:
            return self.weight.label()
        p = ";".join(f"{i}:{e}" for i, e in self.powers)
        return f"vac{self.k}[{p}]"

    def power_generators(self) -> list[tuple[str, AlgElem]]:
        alg = self.alg
        out = []
        for idx, e in self.powers:
            name = f"x{alg.rs.root_label(idx)}(-1)^{e}"
            out.append((name, alg.x(idx, -1) ** e))
        return out

    def r_generators(self, t_max: int, t_min: int | None = None) -> list[tuple[str, AlgElem]]:
        alg = self.alg
        lo = self.k + 1 if t_min is None else max(t_min, self.k + 1)
        return [(f"R^{i}_(-1,{t})", r_generator(alg, i, t, self.k))
                for t in range(lo, t_max + 1) for i in range(1, self.n + 1)]

    def positive_generators(self, mode_bound: int) -> list[tuple[str, AlgElem]]:
        alg = self.alg
        return [(f"x{alg.rs.root_label(b)}({m})", alg.x(b, m))
                for b in range(alg.rs.num_roots) for m in range(0, mode_bound + 1)]

    def generators(self, w_max: int, mode_bound: int = 0) -> list[tuple[str, AlgElem]]:
        """R-truncations of weight <= w_max, the power generators, and x_beta(m)
        for 0 <= m <= mode_bound (a finite slice of n-bar_+)."""
        gens = self.r_generators(w_max)
        gens += [(name, g) for name, g in self.power_generators()]
        gens += self.positive_generators(mode_bound)
        return gens


@dataclass(frozen=True)
class Window:
    """Truncation parameters.

    w_max: largest weight of examined components.
    t_max: largest weight of seeded R-truncations (defaults to w_max).
    charge_max: largest total charge of examined components (None: no cap).
    mode_bound: largest nonnegative mode used in descent (None: exact).
    growth_cap: how many times t_max may be enlarged by callers that grow.
    """

    w_max: int
    t_max: int | None = None
    charge_max: int | None = None
    mode_bound: int | None = None
    growth_cap: int = 12

    @property
    def seeds(self) -> int:
        return self.w_max if self.t_max is None else self.t_max


class IdealClosure:
    """Truncated graded pieces of the projected left ideal."""

    def __init__(self, spec: IdealSpec, charge_cap: int, mode_bound: int | None = None):
        self.spec = spec
        self.alg = spec.alg
        self.charge_cap = charge_cap
        self.mode_bound = mode_bound
        self.descent: dict[GradedIndex, RowSpace] = {}
        self.t_done = spec.k
        self._pieces: dict[GradedIndex, RowSpace] = {}
        self._work: list[tuple[GradedIndex, dict]] = []
        self._roots = [(b, self.alg.rs.positive_roots[b]) for b in range(self.alg.rs.num_roots)]
        for _, g in spec.power_generators():
            self._seed(g)
        self._propagate()

    def _seed(self, elem: AlgElem) -> None:
        proj = self.alg.project(elem)
        for g, part in proj.components().items():
            if g.total_charge <= self.charge_cap:
                self._add(g, part.terms)

    def _add(self, g: GradedIndex, vec: dict) -> None:
        space = self.descent.get(g)
        if space is None:
            space = self.descent[g] = RowSpace()
        r = space.add(vec)
        if r is not None:
            self._work.append((g, r))
            self._pieces.clear()

    def _propagate(self) -> None:
        alg = self.alg
        while self._work:
            g, vec = self._work.pop()
            top = g.weight - 1
            if self.mode_bound is not None:
                top = min(top, self.mode_bound)
            for b, coords in self._roots:
                charges = tuple(x + y for x, y in zip(g.charges, coords))
                if sum(charges) > self.charge_cap:
                    continue
                for m in range(0, top + 1):
                    out: dict[Monomial, Q] = defaultdict(Q)
                    gen = LoopGen.of(b, m)
                    for mono, c in vec.items():
                        for m2, c2 in alg.insert(gen, mono).items():
                            if not m2 or m2[-1][0] == 0:
                                out[m2] += c * c2
                    out = {k: v for k, v in out.items() if v}
                    if out:
                        self._add(GradedIndex(g.weight - m, charges), out)

    def grow_to(self, t_max: int) -> None:
        if t_max <= self.t_done:
            return
        for _, r in self.spec.r_generators(t_max, self.t_done + 1):
            self._seed(r)
        self.t_done = t_max
        self._propagate()

    def piece(self, g: GradedIndex) -> RowSpace:
        """The ideal component at ``g`` (inside U(n-bar_-)_g) for the current seeds."""
        g = GradedIndex(g.weight, tuple(g.charges))
        hit = self._pieces.get(g)
        if hit is not None:
            return hit
        if g.total_charge > self.charge_cap:
            raise ValueError(f"component {g} exceeds the closure's charge cap {self.charge_cap}")
        space = RowSpace()
        d = self.descent.get(g)
        if d is not None:
            for row in d.basis():
                space.add(row)
        alg = self.alg
        for b, coords in self._roots:
            src_charge = tuple(x - y for x, y in zip(g.charges, coords))
            if any(c < 0 for c in src_charge):
                continue
            for m in range(1, g.weight + 1):
                sub = self.piece(GradedIndex(g.weight - m, src_charge))
                if not sub:
                    continue
                gen = LoopGen.of(b, -m)
                for row in sub.basis():
                    space.add(alg.left_gen(gen, row))
        self._pieces[g] = space
        return space

    def rank(self, g: GradedIndex) -> int:
        return self.piece(g).rank


_CLOSURES: dict[tuple, IdealClosure] = {}


def closure_for(spec: IdealSpec, charge_cap: int, t_max: int,
                mode_bound: int | None = None) -> IdealClosure:
    """A shared closure seeded exactly up to ``t_max``.

    Pieces of charge c only depend on seeds of charge <= c, so a closure with a
    larger cap answers smaller-cap queries identically.  A closure already
    grown past ``t_max`` is not reused.
    """
    t_max = max(t_max, spec.k)
    key = (spec, mode_bound)
    cl = _CLOSURES.get(key)
    if cl is None or cl.charge_cap < charge_cap or cl.t_done > t_max:
        cap = charge_cap if cl is None else max(charge_cap, cl.charge_cap)
        cl = IdealClosure(spec, cap, mode_bound)
        _CLOSURES[key] = cl
    cl.grow_to(t_max)
    return cl


def clear_closures() -> None:
    _CLOSURES.clear()


@dataclass(frozen=True)
class GradedSubspace:
    index: GradedIndex
    ambient: tuple[Monomial, ...]
    span: RowSpace = field(compare=False)

    @property
    def rank(self) -> int:
        return self.span.rank

    @property
    def codim(self) -> int:
        return len(self.ambient) - self.span.rank

    def contains(self, a: AlgElem | dict) -> bool:
        terms = a.terms if isinstance(a, AlgElem) else a
        return self.span.contains(terms)

    def rows(self) -> list[AlgElem]:
        alg = loop_algebra(len(self.index.charges))
        return [AlgElem(alg, r) for r in self.span.basis()]


def ideal_graded_component(spec: IdealSpec, g: GradedIndex, window: Window) -> GradedSubspace:
    g = GradedIndex(g.weight, tuple(g.charges))
    if g.weight > window.w_max:
        raise ValueError(f"component {g} is outside the window (w_max={window.w_max})")
    cl = closure_for(spec, g.total_charge, window.seeds, window.mode_bound)
    return GradedSubspace(g, tuple(spec.alg.enumerate_monomials(g)), cl.piece(g))


def ambient_dim(spec: IdealSpec, g: GradedIndex) -> int:
    return len(spec.alg.enumerate_monomials(g))


def quotient_dim(spec: IdealSpec, g: GradedIndex, window: Window) -> int:
    return ideal_graded_component(spec, g, window).codim


def membership(spec: IdealSpec, a: AlgElem, window: Window) -> bool:
    proj = spec.alg.project(a)
    parts = proj.components()
    for g in parts:
        if g.weight > window.w_max:
            raise ValueError(f"component {g} of the element lies outside the window")
    return all(ideal_graded_component(spec, g, window).contains(part)
               for g, part in parts.items())


def membership_growing(spec: IdealSpec, a: AlgElem, slack: int = 0,
                       growth_cap: int = 8) -> tuple[bool, int]:
    """Membership with the seed window grown until the answer is True or the cap is hit.

    Returns ``(member, t_max used)``.  A True answer is exact; False means no
    certificate was found within the cap.
    """
    parts = spec.alg.project(a).components()
    if not parts:
        return True, spec.k
    w_top = max(g.weight for g in parts)
    cap = max(g.total_charge for g in parts)
    t = max(w_top + slack, spec.k + 1)
    for step in range(growth_cap + 1):
        cl = closure_for(spec, cap, t + step)
        if all(cl.piece(g).contains(part.terms) for g, part in parts.items()):
            return True, t + step
    return False, t + growth_cap


def graded_indices(n: int, w_max: int, charge_max: int | None = None,
                   w_min: int = 0) -> Iterator[GradedIndex]:
    """All (weight, charges) with a nonempty U(n-bar_-) piece, in canonical order."""
    alg = loop_algebra(n)
    heights = [sum(r) for r in alg.rs.positive_roots]
    top = max(heights) * w_max
    if charge_max is not None:
        top = min(top, charge_max)
    for w in range(w_min, w_max + 1):
        for charges in product(range(top + 1), repeat=n):
            if sum(charges) > top:
                continue
            g = GradedIndex(w, charges)
            if alg.enumerate_monomials(g):
                yield g
