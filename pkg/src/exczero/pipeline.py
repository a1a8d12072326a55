"""End-to-end runs wiring the catalog, L-invariants, Heegner logarithm and the derivative harness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import Catalog, CatalogError, RunConfig
from .ez import EZInput, EZReport, ez_verify
from .heegner import FormalLogResult, check_hypotheses, hypotheses_hold, point_formal_log
from .linvariants import LInvariantReport, linvariant_report
from .quadfield import ImagQuadField, split_prime

GUARD = 6


class HypothesisFailure(RuntimeError):
    def __init__(self, checks: dict):
        self.checks = checks
        failed = [k for k, v in checks.items() if v is False]
        super().__init__("hypotheses fail: " + ", ".join(failed))


@dataclass
class PipelineResult:
    config: RunConfig
    hypotheses: dict
    linv: LInvariantReport
    log: FormalLogResult
    ez: EZReport


def run(cfg: RunConfig, cat: Catalog) -> PipelineResult:
    if cfg.curve is None:
        raise CatalogError("a curve label is required")
    E = cat.curve(cfg.curve)
    if E.p != cfg.p:
        raise CatalogError("catalog marks p = %s for %s, run asks for %d" % (E.p, E.label, cfg.p))
    K = ImagQuadField(cfg.disc)
    checks = check_hypotheses(E, K, cfg.p)
    if not hypotheses_hold(checks):
        raise HypothesisFailure(checks)
    pts = cat.points_for(E.label, cfg.disc)
    if not pts:
        raise CatalogError("no catalog point of %s over Q(sqrt(%d))" % (E.label, cfg.disc))
    W = cfg.M + GUARD
    sp = split_prime(K, cfg.p, W)
    linv = linvariant_report(E, sp, W)
    lg = point_formal_log(E, pts[0].point, sp, W)
    M = cfg.M
    inp = EZInput(
        cfg.p, M, linv.L_f.add_bigoh(M), linv.L_chi.add_bigoh(M), cfg.w,
        (lg.value * (1 - Fraction(1, cfg.p))).add_bigoh(M), sp.varpi, K.h, lg.value.add_bigoh(M),
        cfg.jet_order,
    )
    rep = ez_verify(inp, L_fK=linv.L_fK.add_bigoh(M))
    rep.inputs.update({"curve": E.label, "disc": cfg.disc, "point_provenance": pts[0].provenance,
                       "m": lg.m, "tate_delta": linv.provenance["tate_delta"]})
    return PipelineResult(cfg, checks, linv, lg, rep)
