"""Two-sided check of Ker f_Lambda = I_Lambda, plus lemma-level machine checks.

The ideal side (quotient dimensions of U(n-bar_-) by the truncated ideal) and
the lattice side (ranks of monomial images on v_Lambda) are computed
independently.  Because the truncated ideal sits inside the true one, which
sits inside the kernel, ``quotient >= principal`` always; equality settles a
component.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .cache import RowCache
from .fock_lattice import LatticeModule, PrincipalSubspace, lattice_module
from .ideal_engine import (IdealSpec, Window, closure_for, graded_indices,
                           membership_growing)
from .linalg import RowSpace
from .scalars import Q
from .textform import format_elem
from .upbw import AffineWeight, AlgElem, GradedIndex, loop_algebra

FIELDS = ("n", "k", "lambda", "weight", "charges", "ambient", "ideal_rank",
          "quotient_dim", "principal_dim", "equal")

PASS, MISMATCH, UNSTABLE = "PASS", "MISMATCH", "UNSTABLE"


def default_budget(n: int, k: int) -> tuple[int, int | None]:
    """(w_max, charge_max) defaults."""
    if n == 2 and k == 1:
        return 6, 6
    if n == 2 and k == 2:
        return 5, None
    return 4, None


def all_weights(n: int, k: int) -> list[AffineWeight]:
    out = []
    for c in product(range(k + 1), repeat=n + 1):
        if sum(c) == k:
            out.append(AffineWeight(c))
    return sorted(out, key=lambda w: tuple(-x for x in w.coords))


def principal_dim(weight: AffineWeight, g: GradedIndex) -> int:
    return PrincipalSubspace(weight).dim(g)


def _principal_chunk(args) -> list[int]:
    coords, gs = args
    ps = PrincipalSubspace(AffineWeight(tuple(coords)))
    return [ps.dim(GradedIndex(w, tuple(r))) for w, r in gs]


def principal_dims(weight: AffineWeight, gs: Sequence[GradedIndex], jobs: int = 1) -> dict:
    if jobs <= 1 or len(gs) < 2:
        ps = PrincipalSubspace(weight)
        return {g: ps.dim(g) for g in gs}
    chunks = [list(gs[i::jobs]) for i in range(jobs)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        results = pool.map(_principal_chunk,
                           [(weight.coords, [(g.weight, g.charges) for g in c]) for c in chunks])
        out = {}
        for c, dims in zip(chunks, results):
            out.update(zip(c, dims))
    return {g: out[g] for g in gs}


# -- one-sided containment -------------------------------------------------------

def ideal_generators(spec: IdealSpec, w_max: int, mode_bound: int | None = None):
    """R-truncations and powers of weight <= w_max, and x_beta(m), 0 <= m <= mode_bound."""
    gens = spec.r_generators(w_max)
    gens += [(name, g) for (_, e), (name, g) in zip(spec.powers, spec.power_generators())
             if e <= w_max]
    gens += spec.positive_generators(w_max if mode_bound is None else mode_bound)
    return gens


def annihilation_check(weight: AffineWeight, w_max: int) -> list[tuple[str, bool]]:
    """Every generator of I_Lambda up to weight w_max kills v_Lambda."""
    spec = IdealSpec.from_weight(weight)
    ps = PrincipalSubspace(weight)
    return [(name, not ps.apply(g)) for name, g in ideal_generators(spec, w_max)]


# -- reports ---------------------------------------------------------------------

@dataclass
class ComponentResult:
    index: GradedIndex
    ambient: int
    ideal_rank: int
    principal_dim: int
    t_max: int

    @property
    def quotient_dim(self) -> int:
        return self.ambient - self.ideal_rank

    @property
    def equal(self) -> bool:
        return self.quotient_dim == self.principal_dim


@dataclass
class VerificationReport:
    n: int
    k: int
    weight: AffineWeight
    w_max: int
    charge_max: int
    window: Window
    components: list[ComponentResult] = field(default_factory=list)
    status: str = PASS
    t_final: int = 0
    enlargements: int = 0
    skipped: int = 0

    @property
    def claim(self) -> str:
        return "theorem" if self.n == 2 else "conjecture"

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def offending(self) -> ComponentResult | None:
        return next((c for c in self.components if not c.equal), None)

    def rows(self) -> list[dict]:
        return [{"n": self.n, "k": self.k, "lambda": self.weight.label(),
                 "weight": c.index.weight, "charges": list(c.index.charges),
                 "ambient": c.ambient, "ideal_rank": c.ideal_rank,
                 "quotient_dim": c.quotient_dim, "principal_dim": c.principal_dim,
                 "equal": c.equal} for c in self.components]

    def dims_by_weight(self) -> list[int]:
        out = [0] * (self.w_max + 1)
        for c in self.components:
            out[c.index.weight] += c.principal_dim
        return out

    def summary(self) -> dict:
        off = self.offending
        return {
            "n": self.n, "k": self.k, "lambda": self.weight.label(), "claim": self.claim,
            "status": self.status, "w_max": self.w_max, "charge_max": self.charge_max,
            "window": {"t_start": self.window.seeds, "t_final": self.t_final,
                       "enlargements": self.enlargements,
                       "mode_bound": self.window.mode_bound,
                       "growth_cap": self.window.growth_cap},
            "components_checked": len(self.components),
            "components_skipped": self.skipped,
            "offending": None if off is None else
            {"weight": off.index.weight, "charges": list(off.index.charges),
             "quotient_dim": off.quotient_dim, "principal_dim": off.principal_dim},
        }

    def to_json(self) -> str:
        return json.dumps({"summary": self.summary(), "components": self.rows()}, indent=2) + "\n"

    def to_tsv(self) -> str:
        lines = ["\t".join(FIELDS)]
        for r in self.rows():
            vals = [str(r[f]) if f != "charges" else ",".join(map(str, r[f])) for f in FIELDS]
            vals[-1] = "true" if r["equal"] else "false"
            lines.append("\t".join(vals))
        s = self.summary()
        lines.append(f"# status={s['status']} claim={s['claim']} t_final={self.t_final} "
                     f"enlargements={self.enlargements} skipped={self.skipped}")
        if s["offending"]:
            o = s["offending"]
            lines.append(f"# offending weight={o['weight']} charges={','.join(map(str, o['charges']))}")
        return "\n".join(lines) + "\n"


class _IdealRanks:
    """Ideal ranks per component, through the row cache when one is given."""

    def __init__(self, spec: IdealSpec, charge_cap: int, mode_bound: int | None,
                 cache: RowCache | None):
        self.spec = spec
        self.cap = charge_cap
        self.mode_bound = mode_bound
        self.cache = cache

    def rank(self, g: GradedIndex, t_max: int) -> int:
        spec = self.spec
        label = spec.key()
        if self.cache is not None:
            rows = self.cache.load(spec.alg, spec.k, label, g, t_max, self.mode_bound)
            if rows is not None:
                return len(rows)
        piece = closure_for(spec, self.cap, t_max, self.mode_bound).piece(g)
        if self.cache is not None:
            self.cache.store(spec.k, label, g, t_max, self.mode_bound,
                             [AlgElem(spec.alg, r) for r in piece.basis()])
        return piece.rank


def verify_presentation(n: int, k: int, weight: AffineWeight, w_max: int,
                        charge_max: int | None = None, window: Window | None = None,
                        jobs: int = 1, cache: RowCache | None = None,
                        patience: int = 2) -> VerificationReport:
    if weight.rank != n or weight.level != k:
        raise ValueError(f"weight {weight.label()} is not a level-{k} weight for rank {n}")
    if k < 1:
        raise ValueError("level must be positive")
    top_charge = n * w_max
    cmax = top_charge if charge_max is None else min(charge_max, top_charge)
    window = window or Window(w_max=w_max, charge_max=cmax)
    spec = IdealSpec.from_weight(weight)

    for name, ok in annihilation_check(weight, w_max):
        if not ok:
            raise AssertionError(f"generator {name} does not annihilate v_Lambda")

    gs = list(graded_indices(n, w_max))
    kept = [g for g in gs if g.total_charge <= cmax]
    report = VerificationReport(n, k, weight, w_max, cmax, window, skipped=len(gs) - len(kept))
    pdims = principal_dims(weight, kept, jobs)
    ambient = {g: len(spec.alg.enumerate_monomials(g)) for g in kept}
    ranks = _IdealRanks(spec, cmax, window.mode_bound, cache)

    t = window.seeds
    current = {g: ranks.rank(g, t) for g in kept}
    used = {g: t for g in kept}

    def open_components():
        out = []
        for g in kept:
            q = ambient[g] - current[g]
            if q < pdims[g]:
                raise AssertionError(f"quotient {q} < principal {pdims[g]} at {g}: "
                                     "ideal is not contained in the kernel")
            if q > pdims[g]:
                out.append(g)
        return out

    pending = open_components()
    still = 0
    status = PASS
    while pending:
        if report.enlargements >= window.growth_cap:
            status = UNSTABLE
            break
        t += 1
        report.enlargements += 1
        changed = False
        for g in pending:
            r = ranks.rank(g, t)
            if r != current[g]:
                changed = True
            current[g] = r
            used[g] = t
        pending = open_components()
        if not pending:
            break
        still = 0 if changed else still + 1
        if still >= patience:
            status = MISMATCH
            break
    report.status = status
    report.t_final = t
    report.components = [ComponentResult(g, ambient[g], current[g], pdims[g], used[g])
                         for g in kept]
    return report


# -- q-series ----------------------------------------------------------------------

def qseries(weight: AffineWeight, w_max: int, charge_max: int | None = None,
            jobs: int = 1) -> dict[GradedIndex, int]:
    """Nonzero coefficients of sum dim W(Lambda)_(w,r) q^w z^r up to the budget."""
    n = weight.rank
    gs = [g for g in graded_indices(n, w_max)
          if charge_max is None or g.total_charge <= charge_max]
    dims = principal_dims(weight, gs, jobs)
    return {g: d for g, d in dims.items() if d}


# -- lemma checks --------------------------------------------------------------------

@dataclass
class LemmaResult:
    generator: str
    image: str
    target: str
    member: bool
    t_max: int


@dataclass
class LemmaReport:
    name: str
    results: list[LemmaResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.member for r in self.results)

    @property
    def failures(self) -> list[LemmaResult]:
        return [r for r in self.results if not r.member]

    def to_text(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'} "
                 f"({len(self.results) - len(self.failures)}/{len(self.results)} members)"]
        for r in self.failures:
            lines.append(f"  not found: {r.generator} -> {r.image} in I_({r.target}) "
                         f"up to t_max={r.t_max}")
        return "\n".join(lines) + "\n"


def _check_images(report: LemmaReport, gens, image_fn, target: AffineWeight,
                  growth_cap: int) -> None:
    spec = IdealSpec.from_weight(target)
    for name, g in gens:
        img = image_fn(g)
        ok, t = membership_growing(spec, img, growth_cap=growth_cap)
        report.results.append(LemmaResult(name, format_elem(spec.alg.project(img)),
                                          target.label(), ok, t))


def lemma_check_tau(k: int, weight: AffineWeight, w_max: int,
                    growth_cap: int = 6) -> LemmaReport:
    """tau^Lambda_{lambda_1} maps I_Lambda into I_(k2,k0,k1); tau_{lambda_2} into I_(k1,k2,k0)."""
    if weight.rank != 2 or weight.level != k:
        raise ValueError("tau lemma check needs a level-k weight of sl(3)")
    alg = loop_algebra(2)
    k0, k1, k2 = weight.coords
    gens = ideal_generators(IdealSpec.from_weight(weight), w_max)
    report = LemmaReport(f"tau lemma, Lambda=({weight.label()})")
    one = (1, 1)
    _check_images(report, [(f"tau1 {nm}", g) for nm, g in gens],
                  lambda a: alg.tau_affine(1, one, weight, a),
                  AffineWeight((k2, k0, k1)), growth_cap)
    _check_images(report, [(f"tau2 {nm}", g) for nm, g in gens],
                  lambda a: alg.tau_affine(2, one, weight, a),
                  AffineWeight((k1, k2, k0)), growth_cap)
    return report


def lemma_check_sigma(k: int, k1: int, k2: int, w_max: int,
                      growth_cap: int = 6) -> LemmaReport:
    """sigma_{omega_1} maps I_(0,k1,k2) into I_(k1,k2,0); sigma_{omega_2} into I_(k2,0,k1)."""
    if k1 < 0 or k2 < 0 or k1 + k2 != k:
        raise ValueError("sigma lemma check needs k1 + k2 = k with k1, k2 >= 0")
    alg = loop_algebra(2)
    source = AffineWeight((0, k1, k2))
    gens = ideal_generators(IdealSpec.from_weight(source), w_max)
    report = LemmaReport(f"sigma lemma, (k1,k2)=({k1},{k2})")
    one = (1, 1)
    _check_images(report, [(f"sigma1 {nm}", g) for nm, g in gens],
                  lambda a: alg.sigma_affine(1, one, k1, k2, a),
                  AffineWeight((k1, k2, 0)), growth_cap)
    _check_images(report, [(f"sigma2 {nm}", g) for nm, g in gens],
                  lambda a: alg.sigma_affine(2, one, k1, k2, a),
                  AffineWeight((k2, 0, k1)), growth_cap)
    return report


# -- membership facts around I_{k Lambda_0} -------------------------------------------

def rcommute_check(k: int, t_max: int, growth_cap: int = 6) -> list[tuple[str, bool]]:
    """R^i_{-1,t} x_{alpha_j}(-1)^m in I_{k Lambda_0} + U x_{alpha_i+alpha_j}(-1), 0 <= m <= k."""
    from .upbw import r_generator
    alg = loop_algebra(2)
    spec = IdealSpec.vacuum(2, k, {(1, 1): 1})
    out = []
    for i, j in ((1, 2), (2, 1)):
        xj = alg.x(alg.simple(j), -1)
        for t in range(k + 1, t_max + 1):
            r = r_generator(alg, i, t, k)
            for m in range(0, k + 1):
                ok, _ = membership_growing(spec, r * xj ** m, growth_cap=growth_cap)
                out.append((f"R^{i}_(-1,{t}) x{alg.rs.root_label(alg.simple(j))}(-1)^{m}", ok))
    return out


def redundancy_facts(w_max: int = 4) -> list[tuple[str, bool]]:
    """Membership facts about redundant generators at level 2 for sl(3)."""
    alg = loop_algebra(2)
    a1, a2, th = alg.simple(1), alg.simple(2), alg.root_index((1, 1))
    vac = IdealSpec.vacuum(2, 2)
    red = IdealSpec.vacuum(2, 2, {(1, 0): 2})
    out = []
    ok, _ = membership_growing(vac, alg.x(a2, -1) ** 3)
    out.append(("x[0,1](-1)^3 in I_(2,0,0)", ok))
    ok, _ = membership_growing(red, alg.x(th, -1) ** 2)
    out.append(("x[1,1](-1)^2 in I_(2,0,0) + U x[1,0](-1)^2", ok))
    # I_(1,1,0) and I_(2,0,0) + U x[1,0](-1)^2 have the same pieces
    full = IdealSpec.from_weight(AffineWeight((1, 1, 0)))
    same = True
    for g in graded_indices(2, w_max):
        cap = 2 * w_max
        a = closure_for(full, cap, w_max).piece(g)
        b = closure_for(red, cap, w_max).piece(g)
        if a.rank != b.rank or any(not b.contains(r) for r in a.basis()):
            same = False
    out.append((f"I_(1,1,0) = I_(2,0,0) + U x[1,0](-1)^2 up to weight {w_max}", same))
    # x[1,1](-1) is not redundant for Lambda_1 + Lambda_2.  Every other generator
    # has a charge coordinate >= 2, so the (1,(1,1)) piece is exactly zero.
    other = IdealSpec.vacuum(2, 2, {(1, 0): 2, (0, 1): 2})
    g = GradedIndex(1, (1, 1))
    piece = closure_for(other, 2, 1).piece(g)
    out.append(("x[1,1](-1) not in I_(2,0,0) + U x[1,0](-1)^2 + U x[0,1](-1)^2",
                not piece.contains(alg.x(th, -1).terms)))
    return out


# -- operator identities on the lattice side ---------------------------------------------

def fock_states(module: LatticeModule, max_weight: int) -> list:
    """All single-factor Fock states of L(0)-weight <= max_weight."""
    from .fock_lattice import heisenberg_monomials
    rs = module.rs
    n = rs.rank
    bound = 2 * max_weight + 2
    out = []
    hm = heisenberg_monomials(n, max_weight)
    for mu in product(range(-bound, bound + 1), repeat=n):
        lat = rs.weight_pairing(mu, mu) / 2
        if lat > max_weight:
            continue
        for h in hm:
            if lat - sum(m for _, m in h) <= max_weight:
                out.append((h, tuple(mu)))
    return sorted(out)


def homomorphism_check(n: int, max_mode: int = 3, max_weight: int = 4) -> tuple[int, int]:
    """[x_a(m), x_b(p)] = C_ab x_{a+b}(m+p) on Fock states; returns (checked, failures)."""
    module = lattice_module(n)
    rs = module.rs
    states = fock_states(module, max_weight)
    modes = range(-max_mode, max_mode + 1)
    checked = bad = 0
    for s in states:
        v = {(s,): Q(1)}
        single = {(a, m): module.act_x(a, m, v)
                  for a in range(rs.num_roots) for m in range(-2 * max_mode, 2 * max_mode + 1)}
        for a in range(rs.num_roots):
            for b in range(rs.num_roots):
                br = rs.bracket(a, b)
                for m in modes:
                    xa = single[(a, m)]
                    for p in modes:
                        lhs = _sub(module.act_x(a, m, single[(b, p)]), module.act_x(b, p, xa))
                        rhs = {} if br is None else _scale(single[(br[0], m + p)], br[1])
                        checked += 1
                        if lhs != rhs:
                            bad += 1
    return checked, bad


def _sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for t, c in v.items():
        out[t] = out.get(t, 0) - c
    return {t: c for t, c in out.items() if c}


def _scale(u: dict, c) -> dict:
    return {t: c * x for t, x in u.items()}


def conjugation_check(n: int, shifts: Iterable[Sequence[int]], max_mode: int = 3,
                      max_weight: int = 3) -> tuple[int, int]:
    """e_lam x_a(m) = c(a, -lam) x_a(m - <a, lam>) e_lam on Fock states."""
    module = lattice_module(n)
    rs = module.rs
    coc = rs.cocycle
    states = fock_states(module, max_weight)
    checked = bad = 0
    for lam in shifts:
        lam = tuple(lam)
        neg = tuple(-x for x in lam)
        for s in states:
            v = {(s,): Q(1)}
            ev = module.e_lambda(lam, v)
            for a, root in enumerate(rs.positive_roots):
                c = coc.c(rs.root_to_weight(root), neg)
                shift = rs.root_weight_pairing(root, lam)
                for m in range(-max_mode, max_mode + 1):
                    lhs = module.e_lambda(lam, module.act_x(a, m, v))
                    rhs = _scale(module.act_x(a, m - shift, ev), c)
                    checked += 1
                    if lhs != rhs:
                        bad += 1
    return checked, bad


def translation_images(weight: AffineWeight, i: int, kind: str, w_max: int) -> list[str]:
    """Compare e^{(x)k} (b v_Lambda) with (twisted map)(b) v' on each graded piece.

    ``kind`` is ``"lambda"`` (tau maps, any sl(3) weight) or ``"omega"`` (sigma
    maps, weights with k0 = 0).  Within one graded piece the two sides must
    agree up to a single nonzero constant, and the map must be injective.
    Returns a list of failure descriptions.
    """
    if weight.rank != 2:
        raise ValueError("translation images are defined for sl(3)")
    alg = loop_algebra(2)
    module = lattice_module(2)
    rs = module.rs
    k0, k1, k2 = weight.coords
    one = (1, 1)
    if kind == "lambda":
        shift = rs.fundamental(i)
        if i == 1:
            labels = [1] * k0 + [2] * k1 + [0] * k2
        else:
            labels = [2] * k0 + [0] * k1 + [1] * k2

        def image(a):
            return alg.tau_affine(i, one, weight, a)
    elif kind == "omega":
        if k0 != 0:
            raise ValueError("omega translations act on weights with k0 = 0")
        shift = rs.omega(i)
        labels = [0] * k1 + [1] * k2 if i == 1 else [2] * k1 + [0] * k2

        def image(a):
            return alg.sigma_affine(i, one, k1, k2, a)
    else:
        raise ValueError(f"unknown translation kind {kind!r}")

    src = PrincipalSubspace(weight)
    v_target = module.tensor_vacuum(labels)
    failures = []
    for g in graded_indices(2, w_max):
        basis = alg.enumerate_monomials(g)
        span = RowSpace()
        img_span = RowSpace()
        ratio = None
        for mono in basis:
            b = alg.monomial(mono)
            before = src.image(mono)
            lhs = module.e_lambda(shift, before)
            rhs = module.act(image(b), v_target)
            span.add(before)
            img_span.add(lhs)
            if not lhs and not rhs:
                continue
            if not lhs or not rhs:
                failures.append(f"{g}: {format_elem(b)} maps to zero on one side only")
                continue
            key = min(lhs)
            r = lhs[key] / rhs.get(key, Q(0)) if rhs.get(key) else None
            if r is None or _scale(rhs, r) != lhs:
                failures.append(f"{g}: {format_elem(b)} images are not proportional")
                continue
            if ratio is None:
                ratio = r
            elif r != ratio:
                failures.append(f"{g}: constant changes within the piece")
        if img_span.rank != span.rank:
            failures.append(f"{g}: rank drops from {span.rank} to {img_span.rank}")
    return failures
