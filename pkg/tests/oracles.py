"""Reference computations that share no code with the package internals.

* ``EvalRep``: U(n-bar) acting on C^(n+1) (x) C^(n+1) through two evaluation
  points, x_alpha(m) -> z1^m E_alpha (x) 1 + z2^m 1 (x) E_alpha.  Root vectors are
  matrix units rescaled so that [E_a, E_b] = C_ab E_(a+b) with the package's
  constants; the sign of each rescaling is solved from the simple roots up.
* ``fermionic_dims``: coefficients of q^(r^T A r / 2 + r_j) / prod (q)_(r_i),
  the level-one graded dimensions of W(Lambda_j).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product


def cartan(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def positive_roots(n):
    out = []
    for length in range(1, n + 1):
        for start in range(n - length + 1):
            out.append(tuple(int(start <= j < start + length) for j in range(n)))
    return out


def _mat_zero(d):
    return [[Fraction(0)] * d for _ in range(d)]


def _mat_mul(a, b):
    d = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(d) if a[i][k]), Fraction(0))
             for j in range(d)] for i in range(d)]


def _mat_add(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _kron(a, b):
    da, db = len(a), len(b)
    out = _mat_zero(da * db)
    for i in range(da):
        for j in range(da):
            if a[i][j]:
                for k in range(db):
                    for l in range(db):
                        if b[k][l]:
                            out[i * db + k][j * db + l] = a[i][j] * b[k][l]
    return out


def _eye(d):
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


class EvalRep:
    def __init__(self, n, brackets, z=(Fraction(2), Fraction(3))):
        self.n = n
        self.roots = positive_roots(n)
        d = n + 1
        # root with interval [s, e) acts as a scaled matrix unit e_{s, e}
        scale = {}
        for r in self.roots:
            s = r.index(1)
            e = s + sum(r)
            scale[r] = (s, e)
        signs = {}
        for idx, r in enumerate(self.roots):
            if sum(r) == 1:
                signs[idx] = Fraction(1)
        # [E_a, E_b] = e_{s,m} e_{m,e} * sa * sb = C_ab * s_(a+b) e_{s,e}
        for idx, r in enumerate(self.roots):
            if idx in signs:
                continue
            s, e = scale[r]
            a = self.roots.index(tuple(int(s <= j < s + 1) for j in range(n)))
            b = self.roots.index(tuple(int(s + 1 <= j < e) for j in range(n)))
            c = brackets[(a, b)][1]
            signs[idx] = signs[a] * signs[b] / c
        self.E = []
        for idx, r in enumerate(self.roots):
            s, e = scale[r]
            m = _mat_zero(d)
            m[s][e] = signs[idx]
            self.E.append(m)
        self.z = z
        self.d = d

    def gen(self, root, mode):
        z1, z2 = self.z
        one = _eye(self.d)
        e = self.E[root]
        left = [[x * z1 ** mode for x in row] for row in _kron(e, one)]
        right = [[x * z2 ** mode for x in row] for row in _kron(one, e)]
        return _mat_add(left, right)

    def word(self, factors):
        out = _eye(self.d ** 2)
        for f in factors:
            out = _mat_mul(out, self.gen(f[1], f[2]))
        return out

    def element(self, terms):
        out = _mat_zero(self.d ** 2)
        for mono, c in terms.items():
            w = self.word(mono)
            out = _mat_add(out, [[Fraction(c) * x for x in row] for row in w])
        return out

    def bracket_ok(self, brackets):
        """The rescaled matrices satisfy every structure constant."""
        for (a, b), (s, c) in brackets.items():
            lhs = _mat_add(_mat_mul(self.E[a], self.E[b]), _mat_mul(self.E[b], self.E[a]), -1)
            rhs = [[c * x for x in row] for row in self.E[s]]
            if lhs != rhs:
                return False
        return True


@lru_cache(maxsize=None)
def _partitions_at_most(parts: int, total: int) -> int:
    """Partitions of ``total`` into at most ``parts`` parts (coefficients of 1/(q)_parts)."""
    if total == 0:
        return 1
    if parts == 0:
        return 0
    # p(total, <= parts) = p(total, <= parts-1) + p(total - parts, <= parts)
    res = _partitions_at_most(parts - 1, total)
    if total >= parts:
        res += _partitions_at_most(parts, total - parts)
    return res


def fermionic_dims(n, j, w_max):
    """{(w, r): coefficient} of q^(r^T A r / 2 + r_j) z^r / prod (q)_(r_i), j = 0..n."""
    a = cartan(n)
    out = {}
    bound = 2 * w_max + 2
    for r in product(range(bound), repeat=n):
        quad = sum(r[i] * a[i][k] * r[k] for i in range(n) for k in range(n)) // 2
        shift = quad + (r[j - 1] if j else 0)
        if shift > w_max:
            continue
        # convolve partitions with at most r_i parts
        series = [1] + [0] * (w_max - shift)
        for ri in r:
            new = [0] * len(series)
            for x, cx in enumerate(series):
                if cx:
                    for y in range(len(series) - x):
                        new[x + y] += cx * _partitions_at_most(ri, y)
            series = new
        for extra, c in enumerate(series):
            if c:
                out[(shift + extra, tuple(r))] = c
    return out


def compositions(total, parts):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest
