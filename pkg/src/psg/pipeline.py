"""End-to-end runs that tie the constructions together: M_alpha versus Kan(G~_n(beta))."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact_linear import format_scalar, scalar
from .kantor import kantor_module
from .modules import find_isomorphism, gn_beta_jordan, m_alpha, opposite


@dataclass
class GoldenConfig:
    n: int
    alpha: object
    seed: int = 0
    bound: int = 3
    scan: bool = True  # also probe beta = -alpha and beta = alpha when no candidate matches


def _probe(n: int, alpha, beta, cfg: GoldenConfig) -> dict:
    target_mod = m_alpha(n, alpha)
    gj = gn_beta_jordan(n, beta)
    kan = kantor_module(gj.algebra, gj)
    out = {"beta": format_scalar(beta)}
    straight = find_isomorphism(target_mod, kan, "even", bound=cfg.bound, seed=cfg.seed)
    out["even"] = straight.status
    out["even_solution_dim"] = straight.solution_dim
    flipped = find_isomorphism(target_mod, opposite(kan), "even", bound=cfg.bound, seed=cfg.seed)
    out["opposite_even"] = flipped.status
    out["match"] = "straight" if straight.found else ("opposite" if flipped.found else None)
    out["_witness"] = straight.witness if straight.found else flipped.witness
    return out


@dataclass
class GoldenResult:
    n: int
    alpha: object
    candidates: list
    resolved: object | None
    convention: str | None
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.resolved is not None

    def to_json(self) -> dict:
        clean = lambda d: {k: v for k, v in d.items() if not k.startswith("_")}  # noqa: E731
        return {
            "n": self.n,
            "alpha": format_scalar(self.alpha),
            "candidates": [clean(c) for c in self.candidates],
            "resolved_beta": None if self.resolved is None else format_scalar(self.resolved),
            "convention": self.convention,
            "verdict": "pass" if self.passed else "inconsistent",
            "diagnostics": [clean(c) for c in self.diagnostics],
        }


def golden_pipeline(n: int, alpha, seed: int = 0, scan: bool = True) -> GoldenResult:
    """Try beta in {alpha/2, -alpha/2}; exactly one must give an even isomorphism."""
    cfg = GoldenConfig(n, scalar(alpha), seed=seed, scan=scan)
    a = cfg.alpha
    labelled = [("beta=alpha/2", a / 2), ("beta=-alpha/2", -a / 2)]
    seen, cands = set(), []
    for name, beta in labelled:
        if beta in seen:
            continue
        seen.add(beta)
        res = _probe(n, a, beta, cfg)
        res["rule"] = name
        cands.append(res)
    hits = [c for c in cands if c["match"]]
    resolved = convention = None
    if len(hits) == 1:
        resolved = scalar(hits[0]["beta"])
        convention = hits[0]["rule"]
        if len(seen) == 1:
            convention = "beta=0 (alpha=0, both rules coincide)"
    result = GoldenResult(n, a, cands, resolved, convention)
    if resolved is None and scan:
        for name, beta in (("beta=-alpha", -a), ("beta=alpha", a)):
            if beta in seen:
                continue
            res = _probe(n, a, beta, cfg)
            res["rule"] = name
            result.diagnostics.append(res)
    return result
