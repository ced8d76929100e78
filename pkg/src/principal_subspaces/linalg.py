"""Incremental reduced row echelon form over the rationals.

Vectors are sparse dicts from orderable keys (monomials, tensor states) to
Fractions.  The pivot of each row is its smallest key; every row is zero in
every other row's pivot column, so reduction is a single pass.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .scalars import Q

Vector = dict


class RowSpace:
    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict[Hashable, dict] = {}
        # column -> pivots of rows with a nonzero entry there
        self._where: dict[Hashable, set] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        out = {k: Q(c) for k, c in v.items() if c}
        hits = [k for k in out if k in self.rows]
        for p in hits:
            c = out.get(p)
            if not c:
                continue
            for k, rc in self.rows[p].items():
                nv = out.get(k, 0) - c * rc
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> dict | None:
        """Insert ``v``; return its reduced form if the rank grew, else None."""
        r = self.reduce(v)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p]
        if inv != 1:
            r = {k: c * inv for k, c in r.items()}
        for q in list(self._where.get(p, ())):
            row = self.rows[q]
            c = row[p]
            for k, rc in r.items():
                nv = row.get(k, 0) - c * rc
                if nv:
                    if k not in row:
                        self._where.setdefault(k, set()).add(q)
                    row[k] = nv
                else:
                    del row[k]
                    self._where[k].discard(q)
        self.rows[p] = r
        for k in r:
            self._where.setdefault(k, set()).add(p)
        return dict(r)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rank(vectors: Iterable[Mapping]) -> int:
    return RowSpace(vectors).rank
