"""Lattice vertex operator realization of level-k modules inside V_P^{(x)k}.

A Fock state ``(heis, mu)`` is the vector ``a_{i1}(m1) ... a_{ir}(mr) 1 (x) e^mu``:
``heis`` is a sorted tuple of ``(i, m)`` with ``i`` a 0-based simple-root index
and ``m <= -1``; ``mu`` is a weight in fundamental coordinates.  Heisenberg
modes are taken in the simple-root basis, whose Gram matrix is the Cartan
matrix, so every scalar stays rational.

The action of ``x_alpha(m)`` is the coefficient of ``x^(-m-1)`` in

    E^-(-alpha, x) E^+(-alpha, x) e_alpha x^alpha.

``E^+`` acts on a Heisenberg polynomial as the substitution
``a_i(-n) -> a_i(-n) - <alpha, alpha_i> x^(-n)`` and ``E^-`` multiplies by
``exp(sum_n alpha(-n) x^n / n)``.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import RowSpace
from .root_data import RootSystemData, root_data
from .scalars import Q
from .upbw import AffineWeight, AlgElem, GradedIndex, LoopAlgebra, Monomial, loop_algebra

Heis = tuple[tuple[int, int], ...]
FockState = tuple[Heis, tuple[int, ...]]
Tensor = tuple[FockState, ...]
ModuleVec = dict  # Tensor -> Q


def _merge(a: Heis, b: Heis) -> Heis:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def _partitions(total: int, max_part: int | None = None):
    """Partitions of ``total`` as nonincreasing tuples."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


class LatticeModule:
    """V_P for sl(n+1) together with its level-k tensor powers."""

    def __init__(self, rs: RootSystemData):
        self.rs = rs
        self.n = rs.rank
        self.cocycle = rs.cocycle
        self._eminus: dict[tuple[int, int], dict[Heis, Q]] = {}
        self._act_cache: dict[tuple[int, int, FockState], dict[FockState, Q]] = {}
        self._root_w = [rs.root_to_weight(r) for r in rs.positive_roots]
        # <alpha, alpha_i> for each positive root
        self._contract = [rs.root_to_weight(r) for r in rs.positive_roots]

    # -- single factor --------------------------------------------------------
    def e_minus(self, root: int, a: int) -> dict[Heis, Q]:
        """Coefficient of x^a in exp(sum_{n>0} alpha(-n) x^n / n)."""
        key = (root, a)
        hit = self._eminus.get(key)
        if hit is not None:
            return hit
        if a == 0:
            res = {(): Q(1)}
        else:
            coords = self.rs.positive_roots[root]
            acc: dict[Heis, Q] = defaultdict(Q)
            # a P_a = sum_{j=1}^{a} alpha(-j) P_{a-j}
            for j in range(1, a + 1):
                for mono, c in self.e_minus(root, a - j).items():
                    for i, ai in enumerate(coords):
                        if ai:
                            acc[_merge(((i, -j),), mono)] += c * ai
            res = {m: c / a for m, c in acc.items() if c}
        self._eminus[key] = res
        return res

    def state_weight(self, s: FockState) -> Q:
        heis, mu = s
        return -sum(m for _, m in heis) + self.rs.weight_pairing(mu, mu) / 2

    def act_x_state(self, root: int, mode: int, s: FockState) -> dict[FockState, Q]:
        key = (root, mode, s)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        heis, mu = s
        alpha = self.rs.positive_roots[root]
        pair = sum(a * m for a, m in zip(alpha, mu))
        contract = self._contract[root]
        new_mu = tuple(x + y for x, y in zip(mu, self._root_w[root]))
        sign = self.cocycle.eps(self._root_w[root], mu)

        groups: dict[tuple[int, int], int] = defaultdict(int)
        for f in heis:
            groups[f] += 1
        # substitution a_i(m) -> a_i(m) - <alpha, alpha_i> x^m, expanded per group
        options = []
        for (i, m), e in sorted(groups.items()):
            ci = contract[i]
            if ci == 0:
                options.append([(0, Q(1), ((i, m),) * e)])
                continue
            opts = []
            for r in range(e + 1):
                opts.append((-m * r, Q(comb(e, r) * (-ci) ** r), ((i, m),) * (e - r)))
            options.append(opts)

        out: dict[FockState, Q] = defaultdict(Q)
        for choice in product(*options):
            b = sum(o[0] for o in choice)
            a = b - mode - 1 - pair
            if a < 0:
                continue
            coef = Q(sign)
            rest: Heis = ()
            for o in choice:
                coef *= o[1]
                rest += o[2]
            rest = tuple(sorted(rest))
            for cre, c in self.e_minus(root, a).items():
                out[(_merge(cre, rest), new_mu)] += coef * c
        res = {st: c for st, c in out.items() if c}
        self._act_cache[key] = res
        return res

    # -- tensor powers ----------------------------------------------------------
    def act_x(self, root: int, mode: int, v: Mapping[Tensor, Q]) -> ModuleVec:
        """Diagonal action of x_alpha(m) on a level-k vector."""
        out: dict[Tensor, Q] = defaultdict(Q)
        for t, c in v.items():
            for j, s in enumerate(t):
                for s2, c2 in self.act_x_state(root, mode, s).items():
                    out[t[:j] + (s2,) + t[j + 1:]] += c * c2
        return {t: c for t, c in out.items() if c}

    def act_monomial(self, mono: Monomial, v: Mapping[Tensor, Q]) -> ModuleVec:
        cur = dict(v)
        for f in reversed(mono):
            if not cur:
                break
            cur = self.act_x(f[1], f[2], cur)
        return cur

    def act(self, a: AlgElem, v: Mapping[Tensor, Q]) -> ModuleVec:
        out: dict[Tensor, Q] = defaultdict(Q)
        for mono, c in a.terms.items():
            for t, c2 in self.act_monomial(mono, v).items():
                out[t] += c * c2
        return {t: c for t, c in out.items() if c}

    def e_lambda(self, lam: Sequence[int], v: Mapping[Tensor, Q]) -> ModuleVec:
        """e_lam applied to every tensor factor: e^mu -> eps(lam, mu) e^(lam+mu)."""
        lam = tuple(lam)
        out: dict[Tensor, Q] = {}
        for t, c in v.items():
            coef = Q(c)
            new = []
            for heis, mu in t:
                coef *= self.cocycle.eps(lam, mu)
                new.append((heis, tuple(x + y for x, y in zip(lam, mu))))
            out[tuple(new)] = coef
        return out

    # -- highest weight vectors and graded pieces ---------------------------------
    def tensor_vacuum(self, labels: Sequence[int]) -> ModuleVec:
        """v_{Lambda_{i1}} (x) ... (x) v_{Lambda_{ik}} for fundamental labels i_j."""
        zero = (0,) * self.n
        t = tuple(((), zero if i == 0 else self.rs.fundamental(i)) for i in labels)
        return {t: Q(1)}

    def highest_weight_vector(self, weight: AffineWeight) -> ModuleVec:
        if weight.rank != self.n:
            raise ValueError("weight rank does not match module rank")
        return self.tensor_vacuum(hw_labels(weight))

    def graded_basis(self, weight: AffineWeight, g: GradedIndex) -> list[Tensor]:
        """Tensor basis states of V_P^{(x)k} at grading ``g`` relative to v_Lambda.

        Minuscule weights are the shortest vectors of their Q-cosets, so every
        tensor factor carries nonnegative relative weight.
        """
        labels = hw_labels(weight)
        zero = (0,) * self.n
        bases = [zero if i == 0 else self.rs.fundamental(i) for i in labels]
        per_factor = [self._factor_states(b, g.weight) for b in bases]
        out: list[Tensor] = []

        def rec(j, w_left, charge_left, acc):
            if j == len(per_factor):
                if w_left == 0 and not any(charge_left):
                    out.append(tuple(acc))
                return
            for s, w, d in per_factor[j]:
                if w > w_left:
                    continue
                rec(j + 1, w_left - w, tuple(x - y for x, y in zip(charge_left, d)), acc + [s])

        rec(0, Q(g.weight), tuple(g.charges), [])
        return sorted(out)

    def _factor_states(self, base: tuple[int, ...], budget: int):
        """(state, relative weight, simple-root shift) with relative weight <= budget."""
        rs = self.rs
        base_norm = rs.weight_pairing(base, base)
        states = []
        # |d| <= sqrt(2*budget) + |base|; coordinates are bounded accordingly
        bound = 2 * budget + 2
        for d in product(range(-bound, bound + 1), repeat=self.n):
            mu = tuple(b + x for b, x in zip(base, rs.root_to_weight(d)))
            lat_w = (rs.weight_pairing(mu, mu) - base_norm) / 2
            if lat_w > budget:
                continue
            room = budget - lat_w
            if room.denominator != 1:
                continue
            for heis in heisenberg_monomials(self.n, int(room)):
                hw = -sum(m for _, m in heis)
                states.append(((heis, mu), lat_w + hw, d))
        return states

    def state_text(self, t: Tensor) -> str:
        return " ⊗ ".join(format_state(s) for s in t)


def heisenberg_monomials(n: int, max_weight: int) -> list[Heis]:
    """All Heisenberg monomials of weight <= max_weight."""
    out = []
    for w in range(max_weight + 1):
        for parts in _partitions(w):
            for idx in product(range(n), repeat=len(parts)):
                mono = tuple(sorted((i, -p) for i, p in zip(idx, parts)))
                out.append(mono)
    return sorted(set(out))


def hw_labels(weight: AffineWeight) -> list[int]:
    labels: list[int] = []
    for i, c in enumerate(weight.coords):
        labels.extend([i] * c)
    return labels


def format_state(s: FockState) -> str:
    heis, mu = s
    h = " ".join(f"a{i + 1}({m})" for i, m in heis)
    return f"[{h}] e({','.join(str(x) for x in mu)})"


class PrincipalSubspace:
    """W(Lambda) = U(n-bar) v_Lambda with memoized images of PBW monomials."""

    def __init__(self, weight: AffineWeight, module: "LatticeModule | None" = None):
        self.weight = weight
        self.alg: LoopAlgebra = loop_algebra(weight.rank)
        self.module = module or lattice_module(weight.rank)
        self.v = self.module.highest_weight_vector(weight)
        self._images: dict[Monomial, ModuleVec] = {(): self.v}

    def image(self, mono: Monomial) -> ModuleVec:
        """f_Lambda on a normal-form monomial, built from memoized suffixes."""
        hit = self._images.get(mono)
        if hit is not None:
            return hit
        rest = self.image(mono[1:])
        f = mono[0]
        res = self.module.act_x(f[1], f[2], rest) if rest else {}
        self._images[mono] = res
        return res

    def apply(self, a: AlgElem) -> ModuleVec:
        out: dict[Tensor, Q] = defaultdict(Q)
        for mono, c in a.terms.items():
            for t, c2 in self.image(mono).items():
                out[t] += c * c2
        return {t: c for t, c in out.items() if c}

    def ambient(self, g: GradedIndex) -> list[Monomial]:
        return self.alg.enumerate_monomials(g)

    def component(self, g: GradedIndex) -> RowSpace:
        return RowSpace(self.image(m) for m in self.ambient(g))

    def dim(self, g: GradedIndex) -> int:
        return self.component(g).rank


_MODULES: dict[int, LatticeModule] = {}


def lattice_module(n: int) -> LatticeModule:
    if n not in _MODULES:
        _MODULES[n] = LatticeModule(root_data(n))
    return _MODULES[n]


def principal_dim(weight: AffineWeight, g: GradedIndex) -> int:
    return PrincipalSubspace(weight).dim(g)
