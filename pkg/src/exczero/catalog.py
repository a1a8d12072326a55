"""Curve and point catalogs, and run configuration."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .ellcurve import EllipticCurveData
from .heegner import HeegnerPointData
from .quadfield import is_fundamental, prime_factors

CATALOG_ENV = "EXCZERO_CATALOG"


class CatalogError(ValueError):
    pass


@dataclass
class Catalog:
    curves: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)
    rejects: list = field(default_factory=list)

    def curve(self, label: str) -> EllipticCurveData:
        try:
            return self.curves[label]
        except KeyError:
            raise CatalogError("unknown curve label %r (have %s)" % (label, ", ".join(sorted(self.curves)))) from None

    def points_for(self, label: str, disc: int | None = None) -> list[HeegnerPointData]:
        pts = self.points.get(label, [])
        return [P for P in pts if disc is None or P.disc == disc]

    def triples(self) -> list[tuple[EllipticCurveData, int, HeegnerPointData]]:
        """(curve, p, point) for every stored point."""
        return [(self.curves[lab], self.curves[lab].p, P) for lab in sorted(self.curves) for P in self.points.get(lab, [])]


def bundled_catalog_path() -> Path:
    return Path(str(resources.files("exczero") / "data" / "catalog.json"))


def default_catalog_path() -> Path:
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else bundled_catalog_path()


def _rat(d, what) -> Fraction:
    try:
        return Fraction(str(d))
    except (ValueError, ZeroDivisionError) as exc:
        raise CatalogError("bad rational for %s: %r" % (what, d)) from exc


def _require(rec: dict, key: str, kind, label: str):
    if key not in rec:
        raise CatalogError("record %s: missing field %r" % (label, key))
    v = rec[key]
    if not isinstance(v, kind) or isinstance(v, bool):
        raise CatalogError("record %s: field %r has type %s" % (label, key, type(v).__name__))
    return v


def _check_conductor(E: EllipticCurveData):
    bad = set(prime_factors(E.discriminant))
    if set(prime_factors(E.conductor)) != bad:
        raise CatalogError("%s: conductor %d does not match the primes of the discriminant" % (E.label, E.conductor))
    if E.p is not None:
        if E.conductor % E.p or (E.conductor // E.p) % E.p == 0:
            raise CatalogError("%s: p = %d must divide the conductor exactly once" % (E.label, E.p))
    for ell in bad:
        if E.c4 % ell and E.conductor % (ell * ell) == 0:
            raise CatalogError("%s: multiplicative prime %d appears squared in the conductor" % (E.label, ell))


def parse_catalog(data: dict, source: str = "<memory>") -> Catalog:
    if not isinstance(data, dict) or not isinstance(data.get("curves"), list):
        raise CatalogError("catalog must be an object with a 'curves' list")
    cat = Catalog()
    for i, rec in enumerate(data["curves"]):
        if not isinstance(rec, dict):
            raise CatalogError("curve record %d is not an object" % i)
        label = _require(rec, "label", str, "#%d" % i)
        if label in cat.curves:
            raise CatalogError("duplicate curve label %r" % label)
        ainvs = _require(rec, "a_invariants", list, label)
        if len(ainvs) != 5 or not all(isinstance(a, int) and not isinstance(a, bool) for a in ainvs):
            raise CatalogError("record %s: a_invariants must be five integers" % label)
        conductor = _require(rec, "conductor", int, label)
        p = _require(rec, "p", int, label)
        try:
            E = EllipticCurveData(label, tuple(ainvs), conductor, p)
        except ValueError as exc:
            raise CatalogError(str(exc)) from exc
        _check_conductor(E)
        cat.curves[label] = E
        cat.sources[label] = source
        pts = []
        for j, prec in enumerate(rec.get("heegner_points", [])):
            where = "%s point %d" % (label, j)
            disc = _require(prec, "disc", int, where)
            if disc >= 0 or not is_fundamental(disc):
                raise CatalogError("%s: %d is not a negative fundamental discriminant" % (where, disc))
            for key in ("x", "y"):
                c = _require(prec, key, dict, where)
                if set(c) != {"rat", "sqrt_coeff"}:
                    raise CatalogError("%s: coordinate %s needs exactly 'rat' and 'sqrt_coeff'" % (where, key))
            x = (_rat(prec["x"]["rat"], where), _rat(prec["x"]["sqrt_coeff"], where))
            y = (_rat(prec["y"]["rat"], where), _rat(prec["y"]["sqrt_coeff"], where))
            P = HeegnerPointData.from_coords(label, disc, x, y, str(prec.get("provenance", "ingested")))
            if not E.on_curve(P.point):
                cat.rejects.append({"record": where, "reason": "point does not satisfy the curve equation",
                                    "residual": str(E.residual(P.point))})
                continue
            pts.append(P)
        cat.points[label] = pts
    return cat


def load_catalog(path=None) -> Catalog:
    path = Path(path) if path is not None else default_catalog_path()
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError("%s is not valid JSON: %s" % (path, exc)) from exc
    return parse_catalog(data, str(path))


def catalog_to_json(cat: Catalog) -> dict:
    curves = []
    for label in sorted(cat.curves):
        rec = cat.curves[label].to_json()
        rec.pop("label")
        curves.append({"label": label, **rec, "heegner_points": [P.to_json() for P in cat.points.get(label, [])]})
    return {"schema": "exczero-catalog/1", "curves": curves}


@dataclass(frozen=True)
class RunConfig:
    p: int
    disc: int
    curve: str | None = None
    M: int = 20
    qprec: int = 200
    tprec: int = 8
    w: int = -1
    report_format: str = "text"
    jet_order: int = 2

    def __post_init__(self):
        if self.p < 5 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError("p must be a prime >= 5, got %d" % self.p)
        if self.M < 10:
            raise ValueError("precision M must be at least 10")
        if self.qprec < 1 or self.tprec < 2:
            raise ValueError("q-truncation must be >= 1 and T-truncation >= 2")
        if self.w not in (1, -1):
            raise ValueError("w must be +1 or -1")
        if self.report_format not in ("text", "json"):
            raise ValueError("report format must be text or json")
        if not is_fundamental(self.disc) or self.disc >= -4:
            raise ValueError("disc must be a negative fundamental discriminant below -4")
