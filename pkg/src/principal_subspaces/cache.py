"""On-disk store for ideal components: ``<root>/<n>/<k>/<lambda>/<g>.rows``.

Each file holds one block per window, introduced by a header line
``# t_max=T mode_bound=M``, followed by one basis row per line in the
canonical element text form.
"""

from __future__ import annotations

import os
from pathlib import Path

from .textform import format_elem, parse_elem
from .upbw import AlgElem, GradedIndex, LoopAlgebra

ENV_VAR = "PSV_CACHE"


def default_root() -> Path | None:
    val = os.environ.get(ENV_VAR)
    return Path(val) if val else None


def component_name(g: GradedIndex) -> str:
    return f"w{g.weight}_r{'-'.join(str(c) for c in g.charges)}"


class RowCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path(self, n: int, k: int, label: str, g: GradedIndex) -> Path:
        return self.root / str(n) / str(k) / label / f"{component_name(g)}.rows"

    @staticmethod
    def _header(t_max: int, mode_bound: int | None) -> str:
        return f"# t_max={t_max} mode_bound={'none' if mode_bound is None else mode_bound}"

    def load(self, alg: LoopAlgebra, k: int, label: str, g: GradedIndex, t_max: int,
             mode_bound: int | None) -> list[AlgElem] | None:
        p = self.path(alg.n, k, label, g)
        if not p.exists():
            return None
        want = self._header(t_max, mode_bound)
        rows: list[AlgElem] | None = None
        for line in p.read_text().splitlines():
            if line.startswith("#"):
                if rows is not None:
                    break
                if line == want:
                    rows = []
            elif rows is not None and line.strip():
                rows.append(parse_elem(alg, line))
        return rows

    def store(self, k: int, label: str, g: GradedIndex, t_max: int,
              mode_bound: int | None, rows: list[AlgElem]) -> None:
        if not rows:
            alg_n = len(g.charges)
        else:
            alg_n = rows[0].alg.n
        p = self.path(alg_n, k, label, g)
        p.parent.mkdir(parents=True, exist_ok=True)
        block = [self._header(t_max, mode_bound)] + [format_elem(r) for r in rows]
        existing = p.read_text().splitlines() if p.exists() else []
        if block[0] in existing:
            return
        tmp = p.with_suffix(".tmp")
        tmp.write_text("\n".join(existing + block) + "\n")
        tmp.replace(p)
