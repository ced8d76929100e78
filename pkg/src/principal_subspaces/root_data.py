"""Root system, pairing and lattice cocycle data for sl(n+1).

Conventions
-----------
* Roots (elements of Q) are integer vectors in the simple-root basis.
* Weights (elements of P) are integer vectors in the fundamental-weight basis.
* ``alpha_j = sum_i A[i][j] lambda_i`` so the fundamental coordinates of a root
  with simple coordinates ``a`` are ``A @ a``.
* ``<alpha, lam>`` for a root in simple coordinates and a weight in fundamental
  coordinates is a plain dot product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .scalars import Q

Vec = tuple[int, ...]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def cartan_matrix(n: int) -> tuple[Vec, ...]:
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )


def _inverse(mat: Sequence[Sequence[int]]) -> tuple[tuple[Q, ...], ...]:
    """Exact Gauss-Jordan inverse."""
    n = len(mat)
    aug = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class RootSystemData:
    rank: int
    cartan: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    fund_weight_pairing: tuple[tuple[Q, ...], ...]
    # structure constant table: (a, b) -> (index of alpha_a + alpha_b, C_ab)
    brackets: dict = field(default_factory=dict, compare=False, repr=False)
    cocycle: "Cocycle | None" = field(default=None, compare=False, repr=False)

    @property
    def num_roots(self) -> int:
        return len(self.positive_roots)

    def root_index(self, coords: Sequence[int]) -> int:
        return self.positive_roots.index(tuple(coords))

    def root_to_weight(self, a: Sequence[int]) -> Vec:
        """Fundamental-weight coordinates of a root given in simple coordinates."""
        return tuple(_dot(row, a) for row in self.cartan)

    def weight_to_root(self, lam: Sequence[int]) -> Vec | None:
        """Simple coordinates of ``lam`` if it lies in Q, else None."""
        coords = [sum(self.fund_weight_pairing[i][j] * lam[j] for j in range(self.rank))
                  for i in range(self.rank)]
        if any(c.denominator != 1 for c in coords):
            return None
        return tuple(int(c) for c in coords)

    def root_pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<alpha, beta> for two elements of Q in simple coordinates."""
        return _dot(a, self.root_to_weight(b))

    def weight_pairing(self, lam: Sequence[int], mu: Sequence[int]) -> Q:
        """<lam, mu> for two elements of P in fundamental coordinates."""
        n = self.rank
        return sum((self.fund_weight_pairing[i][j] * lam[i] * mu[j]
                    for i in range(n) for j in range(n)), Q(0))

    @staticmethod
    def root_weight_pairing(a: Sequence[int], lam: Sequence[int]) -> int:
        return _dot(a, lam)

    def fundamental(self, i: int) -> Vec:
        """lambda_i (1-based) in fundamental coordinates."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def simple_root(self, i: int) -> Vec:
        """alpha_i (1-based) in simple coordinates."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def omega(self, i: int) -> Vec:
        """omega_i = alpha_i - lambda_i in fundamental coordinates."""
        a = self.root_to_weight(self.simple_root(i))
        return tuple(x - int(j == i - 1) for j, x in enumerate(a))

    def bracket(self, a: int, b: int) -> tuple[int, int] | None:
        """``[x_a, x_b] = C * x_c`` as ``(c, C)`` for root indices, or None."""
        return self.brackets.get((a, b))

    def root_label(self, idx: int) -> str:
        return "[" + ",".join(str(c) for c in self.positive_roots[idx]) + "]"


def _interval_roots(n: int) -> list[Vec]:
    roots = []
    for length in range(1, n + 1):
        for start in range(n - length + 1):
            roots.append(tuple(int(start <= j < start + length) for j in range(n)))
    return roots


class CocycleUndefined(ValueError):
    pass


class Cocycle:
    """A +-1 valued cocycle on the weight lattice.

    When a bimultiplicative table ``eps(lam, mu) = (-1)^(lam^T E mu)`` on all of
    P x P satisfies ``c(alpha, beta) = (-1)^<alpha,beta>`` on Q x Q, it is used
    directly (``full`` is True).  Otherwise ``eps(alpha, mu)`` is only defined for
    ``alpha`` in Q: it is the standard root-lattice cocycle evaluated on the
    Q-part of ``mu`` relative to the coset representative ``j * lambda_1``.
    """

    def __init__(self, rs: RootSystemData, table: tuple[Vec, ...] | None):
        self.rs = rs
        self.table = table
        self.full = table is not None
        n = rs.rank
        self._upper = tuple(tuple(rs.cartan[i][j] if i < j else 0 for j in range(n))
                            for i in range(n))

    def _eps_q(self, a: Sequence[int], b: Sequence[int]) -> int:
        e = sum(a[i] * self._upper[i][j] * b[j]
                for i in range(len(a)) for j in range(len(b)))
        return -1 if e % 2 else 1

    def eps(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """eps(lam, mu) for weights in fundamental coordinates."""
        if self.full:
            e = sum(lam[i] * self.table[i][j] * mu[j]
                    for i in range(len(lam)) for j in range(len(mu)))
            return -1 if e % 2 else 1
        rs = self.rs
        a = rs.weight_to_root(lam)
        if a is None:
            raise CocycleUndefined(f"eps({tuple(lam)}, .) needs a root-lattice first argument")
        n = rs.rank
        j = sum((i + 1) * m for i, m in enumerate(mu)) % (n + 1)
        rep = tuple(j if i == 0 else 0 for i in range(n))
        d = rs.weight_to_root(tuple(m - r for m, r in zip(mu, rep)))
        assert d is not None
        return self._eps_q(a, d)

    def eps_roots(self, a: Sequence[int], b: Sequence[int]) -> int:
        """eps(alpha, beta) for roots given in simple coordinates."""
        return self.eps(self.rs.root_to_weight(a), self.rs.root_to_weight(b))

    def c(self, lam: Sequence[int], mu: Sequence[int]) -> int:
        """Commutator map c(lam, mu) = eps(lam, mu) / eps(mu, lam)."""
        return self.eps(lam, mu) * self.eps(mu, lam)


def _find_table(rs: RootSystemData) -> tuple[Vec, ...] | None:
    n = rs.rank
    simple_w = [rs.root_to_weight(rs.simple_root(i + 1)) for i in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    # diagonal entries of E drop out of c, so only off-diagonal bits are searched
    if len(cells) > 20:
        return None
    for bits in itertools.product((0, 1), repeat=len(cells)):
        table = [[0] * n for _ in range(n)]
        for (i, j), b in zip(cells, bits):
            table[i][j] = b
        ok = True
        for p in range(n):
            for q in range(n):
                lam, mu = simple_w[p], simple_w[q]
                e1 = sum(lam[i] * table[i][j] * mu[j] for i in range(n) for j in range(n))
                e2 = sum(mu[i] * table[i][j] * lam[j] for i in range(n) for j in range(n))
                if (e1 + e2 - rs.cartan[p][q]) % 2:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(tuple(r) for r in table)
    return None


def build_cocycle(rs: RootSystemData) -> Cocycle:
    table = _find_table(rs)
    cocycle = Cocycle(rs, table)
    roots = [rs.simple_root(i + 1) for i in range(rs.rank)]
    for a in roots:
        for b in roots:
            want = -1 if rs.root_pairing(a, b) % 2 else 1
            got = cocycle.c(rs.root_to_weight(a), rs.root_to_weight(b))
            if got != want:
                raise RuntimeError(f"cocycle violates c(a,b)=(-1)^<a,b> at {a},{b}")
    return cocycle


def build_root_data(n: int) -> RootSystemData:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"rank must be a positive integer, got {n!r}")
    cartan = cartan_matrix(n)
    roots = tuple(_interval_roots(n))
    rs = RootSystemData(rank=n, cartan=cartan, positive_roots=roots,
                        fund_weight_pairing=_inverse(cartan))
    cocycle = build_cocycle(rs)
    object.__setattr__(rs, "cocycle", cocycle)
    index = {r: i for i, r in enumerate(roots)}
    for a, ra in enumerate(roots):
        for b, rb in enumerate(roots):
            s = tuple(x + y for x, y in zip(ra, rb))
            if s in index:
                # [x_a(m), x_b(p)] = eps(a, b) x_{a+b}(m+p) in the lattice realization
                rs.brackets[(a, b)] = (index[s], cocycle.eps_roots(ra, rb))
    return rs


_CACHE: dict[int, RootSystemData] = {}


def root_data(n: int) -> RootSystemData:
    """Memoized :func:`build_root_data`."""
    if n not in _CACHE:
        _CACHE[n] = build_root_data(n)
    return _CACHE[n]
