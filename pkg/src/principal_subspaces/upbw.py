"""The enveloping algebra U(n-bar) of the loop algebra n (x) C[t, 1/t].

A loop generator x_alpha(m) is stored as a triple ``(sign_class, root, mode)``
with ``sign_class = 0`` for negative modes and 1 otherwise.  Plain tuple order
on these triples is the PBW order, so a monomial is in normal form exactly when
its tuple of factors is sorted.  All monomials ending in a nonnegative mode
span U(n-bar) n-bar_+, and the remaining ones form a basis of U(n-bar_-).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .root_data import RootSystemData, root_data
from .scalars import Q

Factor = tuple[int, int, int]
Monomial = tuple[Factor, ...]


class LoopGen(NamedTuple):
    sign_class: int
    root: int
    mode: int

    @classmethod
    def of(cls, root: int, mode: int) -> "LoopGen":
        return cls(0 if mode < 0 else 1, root, mode)


class GradedIndex(NamedTuple):
    weight: int
    charges: tuple[int, ...]

    @property
    def total_charge(self) -> int:
        return sum(self.charges)


@dataclass(frozen=True)
class AffineWeight:
    """Dominant integral weight k_0 Lambda_0 + ... + k_n Lambda_n."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 2 or any(c < 0 for c in self.coords):
            raise ValueError(f"bad dominant weight {self.coords!r}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords) - 1

    @property
    def level(self) -> int:
        return sum(self.coords)

    @property
    def finite_part(self) -> tuple[int, ...]:
        return self.coords[1:]

    def exponent(self, root: Sequence[int]) -> int:
        """k + 1 - <alpha, finite part> for a positive root in simple coordinates."""
        return self.level + 1 - sum(a * c for a, c in zip(root, self.finite_part))

    @property
    def conformal_shift(self) -> Q:
        rs = root_data(self.rank)
        lam = self.finite_part
        two_rho = [0] * self.rank
        for r in rs.positive_roots:
            two_rho = [a + b for a, b in zip(two_rho, r)]
        shifted = tuple(x + y for x, y in zip(lam, rs.root_to_weight(tuple(two_rho))))
        return rs.weight_pairing(lam, shifted) / (2 * (self.level + self.rank + 1))

    def label(self) -> str:
        return ",".join(str(c) for c in self.coords)

    @classmethod
    def parse(cls, text: str) -> "AffineWeight":
        return cls(tuple(int(t) for t in text.split(",")))


class LoopAlgebra:
    """U(n-bar) for sl(n+1) with memoized PBW straightening."""

    def __init__(self, rs: RootSystemData):
        self.rs = rs
        self.n = rs.rank
        self._insert_cache: dict[tuple[Factor, Monomial], dict[Monomial, int]] = {}

    # -- basic constructors -------------------------------------------------
    def root_index(self, coords: Sequence[int]) -> int:
        return self.rs.root_index(coords)

    def simple(self, i: int) -> int:
        """Root index of alpha_i (1-based)."""
        return self.rs.root_index(self.rs.simple_root(i))

    def one(self) -> "AlgElem":
        return AlgElem(self, {(): Q(1)})

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def x(self, root: int | Sequence[int], mode: int) -> "AlgElem":
        if not isinstance(root, int):
            root = self.root_index(root)
        return AlgElem(self, {(LoopGen.of(root, mode),): Q(1)})

    def monomial(self, mono: Monomial) -> "AlgElem":
        return AlgElem(self, {tuple(mono): Q(1)})

    # -- gradings -----------------------------------------------------------
    def weight(self, mono: Monomial) -> int:
        return -sum(f[2] for f in mono)

    def charges(self, mono: Monomial) -> tuple[int, ...]:
        out = [0] * self.n
        for f in mono:
            for i, c in enumerate(self.rs.positive_roots[f[1]]):
                out[i] += c
        return tuple(out)

    def grading(self, mono: Monomial) -> GradedIndex:
        return GradedIndex(self.weight(mono), self.charges(mono))

    # -- straightening ------------------------------------------------------
    def insert(self, g: Factor, mono: Monomial) -> dict[Monomial, int]:
        """Normal form of ``g * mono`` for a normal-form ``mono``."""
        if not mono or g <= mono[0]:
            return {(g,) + mono: 1}
        key = (g, mono)
        hit = self._insert_cache.get(key)
        if hit is not None:
            return hit
        f, rest = mono[0], mono[1:]
        out: dict[Monomial, int] = defaultdict(int)
        # g f rest = f (g rest) + [g, f] rest
        for m2, c2 in self.insert(g, rest).items():
            for m3, c3 in self.insert(f, m2).items():
                out[m3] += c2 * c3
        br = self.rs.bracket(g[1], f[1])
        if br is not None:
            s, const = br
            for m3, c3 in self.insert(LoopGen.of(s, g[2] + f[2]), rest).items():
                out[m3] += const * c3
        res = {m: c for m, c in out.items() if c}
        self._insert_cache[key] = res
        return res

    def mul_monomials(self, left: Monomial, right: Monomial) -> dict[Monomial, int]:
        cur: dict[Monomial, int] = {right: 1}
        for g in reversed(left):
            nxt: dict[Monomial, int] = defaultdict(int)
            for m, c in cur.items():
                for m2, c2 in self.insert(g, m).items():
                    nxt[m2] += c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    def word(self, factors: Iterable[Factor]) -> dict[Monomial, int]:
        """Normal form of an arbitrary (unsorted) product of generators."""
        cur: dict[Monomial, int] = {(): 1}
        for g in reversed(list(factors)):
            nxt: dict[Monomial, int] = defaultdict(int)
            for m, c in cur.items():
                for m2, c2 in self.insert(g, m).items():
                    nxt[m2] += c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    def multiply(self, a: "AlgElem", b: "AlgElem") -> "AlgElem":
        out: dict[Monomial, Q] = defaultdict(Q)
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                for m, c in self.mul_monomials(ma, mb).items():
                    out[m] += ca * cb * c
        return AlgElem(self, out)

    def left_gen(self, g: Factor, terms: Mapping[Monomial, Q]) -> dict[Monomial, Q]:
        out: dict[Monomial, Q] = defaultdict(Q)
        for m, c in terms.items():
            for m2, c2 in self.insert(g, m).items():
                out[m2] += c * c2
        return {m: c for m, c in out.items() if c}

    @staticmethod
    def is_negative(mono: Monomial) -> bool:
        return not mono or mono[-1][0] == 0

    def project(self, a: "AlgElem") -> "AlgElem":
        """Component in U(n-bar_-) along U(n-bar) n-bar_+."""
        return AlgElem(self, {m: c for m, c in a.terms.items() if self.is_negative(m)})

    # -- translation maps ---------------------------------------------------
    def _character(self, nu: Sequence, root: int) -> Q:
        val = Q(1)
        for v, c in zip(nu, self.rs.positive_roots[root]):
            val *= Q(v) ** c
        return val

    def tau(self, lam: Sequence[int], nu: Sequence, a: "AlgElem") -> "AlgElem":
        """x_beta(m) -> nu(beta) x_beta(m - <lam, beta>), extended multiplicatively."""
        nu = tuple(Q(v) for v in nu)
        if len(nu) != self.n or any(v == 0 for v in nu):
            raise ValueError("character values must be nonzero, one per simple root")
        if len(lam) != self.n:
            raise ValueError("weight has wrong length")
        roots = self.rs.positive_roots
        shift = [sum(x * y for x, y in zip(lam, r)) for r in roots]
        out: dict[Monomial, Q] = defaultdict(Q)
        for mono, c in a.terms.items():
            coef = Q(c)
            for f in mono:
                coef *= self._character(nu, f[1])
            image = [LoopGen.of(f[1], f[2] - shift[f[1]]) for f in mono]
            for m, c2 in self.word(image).items():
                out[m] += coef * c2
        return AlgElem(self, out)

    def _require_sl3(self) -> None:
        if self.n != 2:
            raise ValueError("tau^Lambda and sigma maps are defined for sl(3) only (n = 2)")

    def tau_affine(self, i: int, nu: Sequence, weight: AffineWeight, a: "AlgElem") -> "AlgElem":
        self._require_sl3()
        if i not in (1, 2) or weight.rank != 2:
            raise ValueError("i must be 1 or 2 and the weight must be for sl(3)")
        k0, k1, k2 = weight.coords
        a1, a2, a12 = self.simple(1), self.simple(2), self.root_index((1, 1))
        if i == 1:
            tail = [LoopGen.of(a1, -1)] * k1 + [LoopGen.of(a12, -1)] * k2
        else:
            tail = [LoopGen.of(a2, -1)] * k2 + [LoopGen.of(a12, -1)] * k1
        img = self.tau(self.rs.fundamental(i), nu, a)
        return img * AlgElem(self, self.word(tail))

    def sigma_affine(self, i: int, nu: Sequence, k1: int, k2: int, a: "AlgElem") -> "AlgElem":
        self._require_sl3()
        if i not in (1, 2) or k1 < 0 or k2 < 0:
            raise ValueError("bad sigma parameters")
        root = self.simple(i)
        tail = [LoopGen.of(root, -1)] * (k1 if i == 1 else k2)
        img = self.tau(self.rs.omega(i), nu, a)
        return img * AlgElem(self, self.word(tail))

    # -- basis enumeration --------------------------------------------------
    def root_count_vectors(self, charges: Sequence[int]) -> list[tuple[int, ...]]:
        """All ways of writing ``charges`` as a nonnegative combination of positive roots."""
        roots = self.rs.positive_roots
        out: list[tuple[int, ...]] = []

        def rec(idx: int, remaining: tuple[int, ...], acc: list[int]) -> None:
            if idx == len(roots):
                if not any(remaining):
                    out.append(tuple(acc))
                return
            r = roots[idx]
            c = 0
            rem = remaining
            while all(x >= 0 for x in rem):
                acc.append(c)
                rec(idx + 1, rem, acc)
                acc.pop()
                c += 1
                rem = tuple(x - y for x, y in zip(rem, r))

        rec(0, tuple(charges), [])
        return out

    def enumerate_monomials(self, g: GradedIndex, mode_floor: int | None = None,
                            mode_ceiling: int = -1, negative_only: bool = True) -> list[Monomial]:
        """Normal-form monomials of grading ``g`` with modes in [floor, ceiling]."""
        w, charges = g.weight, tuple(g.charges)
        if negative_only:
            mode_ceiling = min(mode_ceiling, -1)
        if mode_floor is None:
            if mode_ceiling >= 0:
                raise ValueError("a mode floor is required when nonnegative modes are allowed")
            mode_floor = -w
        if w == 0 and not any(charges):
            return [()]
        if mode_floor > -1 and negative_only:
            return []
        results: list[Monomial] = []
        for counts in self.root_count_vectors(charges):
            groups = [(r, c) for r, c in enumerate(counts) if c]
            self._distribute(groups, 0, w, mode_floor, mode_ceiling, [], results)
        results.sort()
        return results

    def _distribute(self, groups, idx, w_left, lo, hi, acc, results) -> None:
        if idx == len(groups):
            if w_left == 0:
                results.append(tuple(sorted(acc)))
            return
        root, count = groups[idx]
        rest = sum(c for _, c in groups[idx + 1:])
        # remaining groups can absorb weight in [-hi*rest, -lo*rest]
        for modes in _multisets(count, lo, hi):
            wt = -sum(modes)
            rem = w_left - wt
            if rem < -hi * rest or rem > -lo * rest:
                continue
            self._distribute(groups, idx + 1, rem, lo, hi,
                             acc + [LoopGen.of(root, m) for m in modes], results)


def _multisets(count: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples of ``count`` integers in [lo, hi]."""
    if count == 0:
        yield ()
        return
    for first in range(lo, hi + 1):
        for rest in _multisets(count - 1, first, hi):
            yield (first,) + rest


class AlgElem:
    """An element of U(n-bar): finite map from normal-form monomials to rationals."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LoopAlgebra, terms: Mapping[Monomial, object]):
        self.alg = alg
        self.terms = {m: Q(c) for m, c in terms.items() if c}

    def __add__(self, other: "AlgElem") -> "AlgElem":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return AlgElem(self.alg, out)

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return self.alg.multiply(self, other)
        return AlgElem(self.alg, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, scalar):
        return AlgElem(self.alg, {m: scalar * c for m, c in self.terms.items()})

    def __pow__(self, e: int) -> "AlgElem":
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgElem):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        from .textform import format_elem
        return f"AlgElem({format_elem(self)!r})"

    def __str__(self) -> str:
        from .textform import format_elem
        return format_elem(self)

    def components(self) -> dict[GradedIndex, "AlgElem"]:
        """Split into (weight, charge)-homogeneous parts."""
        parts: dict[GradedIndex, dict] = defaultdict(dict)
        for m, c in self.terms.items():
            parts[self.alg.grading(m)][m] = c
        return {g: AlgElem(self.alg, t) for g, t in sorted(parts.items())}


def r_generator(alg: LoopAlgebra, i: int, t: int, k: int) -> AlgElem:
    """The truncation R_{-1,t}^i: sum of x_{alpha_i}(m_1)...x_{alpha_i}(m_{k+1}),
    m_j <= -1, sum m_j = -t."""
    if t < k + 1:
        raise ValueError(f"R_(-1,t) needs t >= k+1 = {k + 1}, got t = {t}")
    root = alg.simple(i)
    terms: dict[Monomial, Q] = {}
    # equal-root factors commute: one monomial per partition, weighted by
    # the number of compositions that rearrange to it
    for parts in _multisets(k + 1, 1, t):
        if sum(parts) != t:
            continue
        mult = factorial(k + 1)
        for p in set(parts):
            mult //= factorial(parts.count(p))
        mono = tuple(sorted(LoopGen.of(root, -p) for p in parts))
        terms[mono] = Q(mult)
    return AlgElem(alg, terms)


_ALGEBRAS: dict[int, LoopAlgebra] = {}


def loop_algebra(n: int) -> LoopAlgebra:
    if n not in _ALGEBRAS:
        _ALGEBRAS[n] = LoopAlgebra(root_data(n))
    return _ALGEBRAS[n]
