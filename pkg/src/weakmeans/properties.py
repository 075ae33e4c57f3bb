"""Numerical falsification of monotonicity-class properties.

Each check samples the aggregator's domain (with a configurable share of
boundary-biased points), reports "no-violation-found" or "violated", and on
violation carries a concrete witness that replays deterministically.
Sampling can never certify a property, so "no-violation-found" is the
strongest positive verdict.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .means import Interval, lehmer_max_args, lehmer_mean

PROPERTIES = (
    "monotone",
    "weakly-monotone",
    "shift-invariant",
    "homogeneous",
    "idempotent",
    "averaging",
    "internal",
)


@dataclass
class Aggregator:
    """Callable aggregator with its mathematical domain and any known
    property annotations ("monotone", "weakly-monotone", "shift-invariant")."""

    fn: Callable[[np.ndarray], float]
    domain: Interval = Interval(-math.inf, math.inf)
    arity: int | None = None  # None = variadic
    known: frozenset = frozenset()
    name: str = ""

    def __call__(self, x) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))


def implies_weakly_monotone(known) -> bool:
    return bool({"monotone", "weakly-monotone", "shift-invariant"} & set(known))


@dataclass
class SamplerConfig:
    samples: int = 100_000
    shift_max: float = 0.5
    seed: int = 0
    tol: float = 1e-9
    boundary_fraction: float = 0.2
    box: Interval | None = None  # finite sampling box; default derived from domain
    probe_points: Sequence = field(default_factory=tuple)  # tried before sampling

    def __post_init__(self):
        if self.samples <= 0 or self.tol <= 0:
            raise ValueError("samples and tol must be positive")
        if not 0.0 <= self.boundary_fraction <= 1.0:
            raise ValueError("boundary_fraction must lie in [0, 1]")


@dataclass
class PropertyReport:
    property: str
    verdict: str  # "no-violation-found" | "violated"
    witness: dict | None
    samples_used: int
    seed: int
    tol: float
    aggregator: str = ""

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witness": self.witness,
            "samples_used": self.samples_used,
            "seed": self.seed,
            "tol": self.tol,
            "aggregator": self.aggregator,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        head = f"{self.property} {self.aggregator}: {self.verdict} " \
               f"(samples={self.samples_used}, seed={self.seed}, tol={self.tol:g})"
        if self.witness is None:
            return head
        parts = [head]
        for k, v in self.witness.items():
            parts.append(f"  {k} = {v}")
        return "\n".join(parts)


def _sampling_box(F: Aggregator, cfg: SamplerConfig) -> Interval:
    if cfg.box is not None:
        return cfg.box
    lo = F.domain.lo if math.isfinite(F.domain.lo) else 0.0
    hi = F.domain.hi if math.isfinite(F.domain.hi) else lo + 1.0
    return Interval(lo, hi)


def _sample_x(rng: np.random.Generator, n: int, box: Interval, boundary_fraction: float) -> np.ndarray:
    x = rng.uniform(box.lo, box.hi, size=n)
    if rng.uniform() < boundary_fraction:
        # bias toward faces/edges/vertices of the box
        mask = rng.uniform(size=n) < rng.uniform(0.2, 1.0)
        if not mask.any():
            mask[rng.integers(n)] = True
        x[mask] = np.where(rng.uniform(size=n) < 0.5, box.lo, box.hi)[mask]
    return x


def _report(prop, verdict, witness, used, cfg, F):
    return PropertyReport(prop, verdict, witness, used, cfg.seed, cfg.tol, F.name)


def _arity(F: Aggregator, n: int | None) -> int:
    if n is not None:
        return n
    if F.arity is not None:
        return F.arity
    return 3


def check_weak_monotonicity(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    """Search for x, a > 0 with F(x + a*1) < F(x) - tol."""
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    used = 0

    def probe(x, a):
        before = F(x)
        after = F(x + a)
        if after < before - cfg.tol:
            return {
                "x": list(map(float, x)),
                "a": float(a),
                "value_before": before,
                "value_after": after,
            }
        return None

    for x, a in cfg.probe_points:
        used += 1
        w = probe(np.asarray(x, dtype=float), float(a))
        if w is not None:
            return _report("weakly-monotone", "violated", w, used, cfg, F)
    while used < cfg.samples:
        used += 1
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        a = rng.uniform(0.0, cfg.shift_max)
        if a <= 0:
            continue
        if math.isfinite(F.domain.hi):
            a = min(a, F.domain.hi - float(x.max()))
            if a <= 0:
                continue
        w = probe(x, a)
        if w is not None:
            return _report("weakly-monotone", "violated", w, used, cfg, F)
    return _report("weakly-monotone", "no-violation-found", None, used, cfg, F)


def check_monotonicity(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    """Search for x <= y componentwise with F(y) < F(x) - tol."""
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    hi = F.domain.hi
    for used in range(1, cfg.samples + 1):
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        y = x.copy()
        if used % 2:  # single-coordinate increment
            i = rng.integers(n)
            y[i] += rng.uniform(0.0, cfg.shift_max)
        else:
            y += rng.uniform(0.0, cfg.shift_max, size=n)
        if math.isfinite(hi):
            y = np.minimum(y, hi)
        fx, fy = F(x), F(y)
        if fy < fx - cfg.tol:
            witness = {
                "x": list(map(float, x)),
                "y": list(map(float, y)),
                "value_before": fx,
                "value_after": fy,
            }
            return _report("monotone", "violated", witness, used, cfg, F)
    return _report("monotone", "no-violation-found", None, cfg.samples, cfg, F)


def check_shift_invariance(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    for used in range(1, cfg.samples + 1):
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        a = rng.uniform(-cfg.shift_max, cfg.shift_max)
        lo, hi = F.domain.lo, F.domain.hi
        if math.isfinite(lo):
            a = max(a, lo - float(x.min()))
        if math.isfinite(hi):
            a = min(a, hi - float(x.max()))
        fx, fxa = F(x), F(x + a)
        if abs(fxa - fx - a) > cfg.tol:
            witness = {
                "x": list(map(float, x)),
                "a": float(a),
                "value_before": fx,
                "value_after": fxa,
                "expected_after": fx + a,
            }
            return _report("shift-invariant", "violated", witness, used, cfg, F)
    return _report("shift-invariant", "no-violation-found", None, cfg.samples, cfg, F)


def check_homogeneity(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    for used in range(1, cfg.samples + 1):
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        lam = rng.uniform(0.05, 10.0)
        if math.isfinite(F.domain.hi) and float(np.abs(x).max()) > 0:
            lam = min(lam, F.domain.hi / float(np.abs(x).max()))
        fx, flx = F(x), F(lam * x)
        if abs(flx - lam * fx) > cfg.tol * max(1.0, lam):
            witness = {
                "x": list(map(float, x)),
                "lambda": float(lam),
                "value": fx,
                "scaled_value": flx,
                "expected": lam * fx,
            }
            return _report("homogeneous", "violated", witness, used, cfg, F)
    return _report("homogeneous", "no-violation-found", None, cfg.samples, cfg, F)


def check_idempotency(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    for used in range(1, cfg.samples + 1):
        t = rng.uniform(box.lo, box.hi)
        ft = F(np.full(n, t))
        if abs(ft - t) > cfg.tol:
            witness = {"t": float(t), "value": ft}
            return _report("idempotent", "violated", witness, used, cfg, F)
    return _report("idempotent", "no-violation-found", None, cfg.samples, cfg, F)


def check_averaging(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    for used in range(1, cfg.samples + 1):
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        fx = F(x)
        if fx < float(x.min()) - cfg.tol or fx > float(x.max()) + cfg.tol:
            witness = {"x": list(map(float, x)), "value": fx}
            return _report("averaging", "violated", witness, used, cfg, F)
    return _report("averaging", "no-violation-found", None, cfg.samples, cfg, F)


def check_internality(
    F: Aggregator, n: int | None = None, cfg: SamplerConfig | None = None
) -> PropertyReport:
    cfg = cfg or SamplerConfig()
    n = _arity(F, n)
    box = _sampling_box(F, cfg)
    rng = np.random.default_rng(cfg.seed)
    for used in range(1, cfg.samples + 1):
        x = _sample_x(rng, n, box, cfg.boundary_fraction)
        fx = F(x)
        if float(np.abs(x - fx).min()) > cfg.tol:
            witness = {"x": list(map(float, x)), "value": fx}
            return _report("internal", "violated", witness, used, cfg, F)
    return _report("internal", "no-violation-found", None, cfg.samples, cfg, F)


CHECKS = {
    "monotone": check_monotonicity,
    "weakly-monotone": check_weak_monotonicity,
    "shift-invariant": check_shift_invariance,
    "homogeneous": check_homogeneity,
    "idempotent": check_idempotency,
    "averaging": check_averaging,
    "internal": check_internality,
}


def directional_derivative(F: Aggregator, x, h: float | None = None) -> float:
    """One-sided forward difference of F along the normalized diagonal."""
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-6 * max(1.0, float(np.abs(x).max()))
    if h <= 0:
        raise ValueError("step h must be positive")
    n = x.size
    return (F(x + h) - F(x)) / (h * math.sqrt(n))


def check_mixture_sufficient_condition(
    w_fn: Callable[[float], float],
    interval: Interval,
    grid: int = 1001,
    dw_fn: Callable[[float], float] | None = None,
) -> PropertyReport:
    """Grid check of the monotonicity sufficient condition
    w(t) >= w'(t) * (hi - t) for a mixture weight function.

    A pass certifies (numerically) the sufficient condition only.
    """
    ts = np.linspace(interval.lo, interval.hi, grid)
    eps = 1e-7 * max(1.0, interval.hi - interval.lo)
    for t in ts:
        if dw_fn is not None:
            dw = float(dw_fn(float(t)))
        else:
            dw = (float(w_fn(min(t + eps, interval.hi))) - float(w_fn(max(t - eps, interval.lo)))) / (
                min(t + eps, interval.hi) - max(t - eps, interval.lo)
            )
        lhs = float(w_fn(float(t)))
        rhs = dw * (interval.hi - float(t))
        if lhs < rhs - 1e-9 * max(1.0, abs(rhs)):
            witness = {"t": float(t), "w": lhs, "dw_times_remaining": rhs}
            return PropertyReport(
                "mixture-monotone-sufficient", "violated", witness, grid, 0, 1e-9
            )
    return PropertyReport(
        "mixture-monotone-sufficient", "no-violation-found", None, grid, 0, 1e-9
    )


def lehmer_aggregator(q: float) -> Aggregator:
    return Aggregator(
        fn=lambda x: lehmer_mean(x, q),
        domain=Interval(0.0, math.inf),
        known=frozenset({"homogeneous"}),
        name=f"lehmer(q={q:g})",
    )


def lehmer_bound_table(
    q_values: Sequence[float], n_max: int, cfg: SamplerConfig | None = None
) -> list[dict]:
    """Theoretical weak-monotonicity bound vs empirical sampling verdict for
    the Lehmer mean over a (q, n) grid."""
    cfg = cfg or SamplerConfig(samples=20_000)
    rows = []
    for q in q_values:
        excluded = 0 < q < 1
        bound = None if excluded else lehmer_max_args(q)
        for n in range(2, n_max + 1):
            F = lehmer_aggregator(q)
            sub = SamplerConfig(
                samples=cfg.samples,
                shift_max=cfg.shift_max,
                seed=cfg.seed,
                tol=cfg.tol,
                boundary_fraction=cfg.boundary_fraction,
                box=cfg.box or Interval(0.0, 1.0),
            )
            report = check_weak_monotonicity(F, n=n, cfg=sub)
            if excluded:
                theory = "not weakly monotone (q in (0,1))"
            elif n <= bound:
                theory = "weakly monotone (within bound)"
            else:
                theory = "no guarantee (beyond bound)"
            rows.append(
                {
                    "q": float(q),
                    "n": int(n),
                    "bound": None if bound is None else float(bound),
                    "theory": theory,
                    "empirical": report.verdict,
                    "witness": report.witness,
                }
            )
    return rows
