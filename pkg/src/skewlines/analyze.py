"""One-pass analysis pipeline over a line configuration.

Runs validation, transversal search, the commutativity predictor, generator
assembly, group closure, classification, the eigenvalue-ratio finiteness
check, and (on request) an orbit enumeration — and folds the results into a
single JSON-ready report.  Every stage is exact; reports built from the same
input are identical.
"""

from dataclasses import dataclass
from typing import Optional

from .configs import (
    LineConfig,
    config_validate,
    predict_abelian,
    transversal_compute,
)
from .groupoid import (
    DEFAULT_BUDGET,
    classify,
    eigratio_check,
    generator_set,
    group_closure,
)
from .orbits import P3Point, orbit_full, orbit_geometric

SCHEMA_VERSION = "1"


class OracleMismatch(RuntimeError):
    """The transport orbit and the plane-intersection orbit disagreed."""


@dataclass
class AnalysisReport:
    config: dict
    validation: dict
    transversal: Optional[dict] = None
    abelian_prediction: Optional[dict] = None
    generators: Optional[dict] = None
    group: Optional[dict] = None
    eigenvalue_ratios: Optional[dict] = None
    orbit: Optional[dict] = None

    @property
    def valid(self) -> bool:
        return bool(self.validation["valid"])

    @property
    def budget_hit(self) -> bool:
        if self.group and self.group["budget_hit"]:
            return True
        return bool(self.orbit and self.orbit["truncated"])

    @property
    def theorem_violation(self) -> bool:
        return bool(self.group and self.group.get("theorem_violation"))

    def exit_code(self) -> int:
        if not self.valid:
            return 1
        if self.theorem_violation:
            return 3
        if self.budget_hit:
            return 2
        return 0

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "validation": self.validation,
        }
        for key in ("transversal", "abelian_prediction", "generators",
                    "group", "eigenvalue_ratios", "orbit"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def _group_section(closure, classification) -> dict:
    out = {
        "order": closure.order,
        "budget_hit": closure.budget_hit,
        "label": None,
        "order_census": None,
        "abelian": None,
        "witnesses": {},
        "theorem_violation": False,
    }
    if classification is not None:
        out["label"] = classification.label
        out["order_census"] = {
            str(k): v for k, v in sorted(classification.census.items())
        }
        out["abelian"] = classification.abelian
        out["witnesses"] = classification.witnesses or {}
        out["theorem_violation"] = classification.theorem_violation
        if classification.invariant_factors is not None:
            out["invariant_factors"] = list(classification.invariant_factors)
    return out


def _orbit_section(cfg, seed, closure, oracle: bool) -> dict:
    report = orbit_full(cfg, seed, closure=closure)
    out = report.to_json()
    out["group_order"] = closure.order
    if oracle:
        check = orbit_geometric(cfg, seed, closure=closure)
        same = {lab: {p.key() for p in pts} for lab, pts in report.points.items()} == \
               {lab: {p.key() for p in pts} for lab, pts in check.points.items()}
        if not (same and report.total_size == check.total_size):
            raise OracleMismatch(
                "plane-intersection enumeration disagrees with matrix transport"
            )
        out["oracle_agrees"] = True
    return out


def analyze(
    cfg: LineConfig,
    *,
    budget: int = DEFAULT_BUDGET,
    mode: str = "all_triples",
    seed: Optional[P3Point] = None,
    oracle: bool = False,
) -> AnalysisReport:
    """Run the full pipeline; later stages are skipped if validation fails."""
    validation = config_validate(cfg)
    report = AnalysisReport(config=cfg.to_json(), validation=validation.to_json())
    if not validation.valid:
        return report

    report.transversal = transversal_compute(cfg).to_json()
    report.abelian_prediction = predict_abelian(cfg).to_json()

    gens = generator_set(cfg, mode=mode)
    report.generators = {"mode": mode, "count": len(gens.elements)}

    closure = group_closure(gens, budget=budget)
    classification = None if closure.budget_hit else classify(closure)
    report.group = _group_section(closure, classification)
    report.eigenvalue_ratios = eigratio_check(cfg).to_json()

    if seed is not None and not closure.budget_hit:
        report.orbit = _orbit_section(cfg, seed, closure, oracle)
    return report
