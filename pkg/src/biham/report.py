"""Analysis orchestration and deterministic report emission.

``run_analyze`` runs every certificate, samples generic rational points
(seed-deterministic), decomposes the pointwise pencils, applies the
criteria and the chain machinery, and aggregates everything into a report
that serializes byte-stably for a fixed (input, seed, version) triple.
"""

import json
from collections import Counter
from dataclasses import dataclass, field

from . import __version__
from .casimir import kronecker_criterion, lax_check, w1_span_dim
from .errors import PoleAtPoint, ValidationError
from .exactalg import rat, rat_str
from .lenard import chain_from_family, integrability_verdict, involution_check, verify_chain
from .models import ModelSpec
from .pencil import decompose, generic_corank
from .sampling import model_inequations, sample_points


@dataclass
class AnalysisReport:
    structure: str
    dim: int
    variables: list
    seed: int
    version: str
    certificates: dict
    families: list
    chains: list
    points: list                      # per-point records
    modal_type: str
    criterion: dict | None
    lax: dict | None
    integrability: dict | None
    expectations: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "structure": self.structure,
            "dim": self.dim,
            "vars": self.variables,
            "seed": self.seed,
            "version": self.version,
            "certificates": self.certificates,
            "families": self.families,
            "chains": self.chains,
            "points": self.points,
            "modal_type": self.modal_type,
            "criterion": self.criterion,
            "lax": self.lax,
            "integrability": self.integrability,
            "expectations": self.expectations,
            "mismatches": self.mismatches,
        }


def run_analyze(model: ModelSpec, points=None, samples: int = 20,
                seed: int = 0) -> AnalysisReport:
    """Certificates, seeded sampling, pointwise decomposition, verdicts."""
    b = model.structure
    certs = {k: v.to_json() for k, v in b.verify().items()}
    from .casimir import family_check

    family_records = []
    for fam in model.families:
        cert = family_check(b, fam)
        family_records.append({"name": fam.name, "degree": fam.degree,
                               "certificate": cert.to_json()})
    chains = [chain_from_family(b, fam) for fam in model.families]
    chain_records = []
    all_chain_functions = []
    for chain in chains:
        cert = verify_chain(chain)
        chain_records.append({"name": chain.name, "anchored": chain.anchored,
                              "length": len(chain.functions),
                              "certificate": cert.to_json()})
        all_chain_functions.extend(chain.functions)
    involution = (involution_check(all_chain_functions, b).to_json()
                  if all_chain_functions else None)

    if points is None:
        points = sample_points(model.dim, samples, seed,
                               inequations=model_inequations(model))
    else:
        points = [tuple(rat(x) for x in p) for p in points]

    point_records = []
    type_counter = Counter()
    criterion_counter = Counter()
    integrability_counter = Counter()
    criterion_sample = None
    integrability_sample = None
    lax_sample = None
    for pt in sorted(points):
        record = {"point": [rat_str(x) for x in pt]}
        try:
            pencil = b.pencil_at(pt)
        except PoleAtPoint as exc:
            record["error"] = str(exc)
            point_records.append(record)
            continue
        ptype = decompose(pencil)
        record["pencil_type"] = ptype.label()
        record["coranks"] = {"bracket1": b.p1.corank_at(pt),
                             "bracket2": b.p2.corank_at(pt),
                             "generic": generic_corank(pencil)}
        type_counter[ptype.label()] += 1
        if model.families:
            record["w1_dim"] = w1_span_dim(model.families, pt)
            verdict = kronecker_criterion(b, model.families, pt)
            record["criterion"] = verdict.to_json()
            criterion_counter[verdict.outcome] += 1
            if criterion_sample is None:
                criterion_sample = verdict
        if chains:
            iv = integrability_verdict(b, chains, pt)
            record["integrability"] = iv.to_json()
            integrability_counter[iv.outcome] += 1
            if integrability_sample is None:
                integrability_sample = iv
        point_records.append(record)

    if model.families and point_records:
        best_fam = max(model.families, key=lambda f: f.degree)
        for pt, record in zip(sorted(points), point_records):
            if "error" in record:
                continue
            lax_sample = lax_check(b, best_fam, pt, seed=seed)
            break
    record_lax = lax_sample.to_json() if lax_sample is not None else None

    modal_type = type_counter.most_common(1)[0][0] if type_counter else ""
    criterion_summary = None
    if criterion_counter:
        outcome = criterion_counter.most_common(1)[0][0]
        criterion_summary = dict(criterion_sample.to_json())
        criterion_summary["modal_outcome"] = outcome
        criterion_summary["outcomes"] = dict(sorted(criterion_counter.items()))
    integrability_summary = None
    if integrability_counter:
        outcome = integrability_counter.most_common(1)[0][0]
        integrability_summary = dict(integrability_sample.to_json())
        integrability_summary["modal_outcome"] = outcome
        integrability_summary["outcomes"] = dict(sorted(integrability_counter.items()))
    elif b.dim and point_records and not chains:
        # no chains supplied: run the verdict with an empty collection so
        # Jordan obstructions still surface
        first = next((p for p, rec in zip(sorted(points), point_records)
                      if "error" not in rec), None)
        if first is not None:
            iv = integrability_verdict(b, [], first)
            integrability_summary = iv.to_json()
            integrability_summary["modal_outcome"] = iv.outcome
            integrability_summary["outcomes"] = {iv.outcome: 1}

    mismatches = []
    exp = dict(model.expectations)
    if exp:
        if exp.get("pencil_type") and exp["pencil_type"] != modal_type:
            mismatches.append(f"pencil type: expected {exp['pencil_type']}, "
                              f"got {modal_type}")
        want = exp.get("criterion")
        got = criterion_summary["modal_outcome"] if criterion_summary else None
        if want is not None and want != got:
            mismatches.append(f"criterion: expected {want}, got {got}")
        want = exp.get("integrability")
        got = (integrability_summary or {}).get("modal_outcome")
        if want is not None and want != got:
            mismatches.append(f"integrability: expected {want}, got {got}")

    return AnalysisReport(
        structure=model.name,
        dim=model.dim,
        variables=list(model.variables),
        seed=seed,
        version=__version__,
        certificates=certs,
        families=family_records,
        chains=chain_records,
        points=point_records,
        modal_type=modal_type,
        criterion=criterion_summary,
        lax=record_lax,
        integrability=integrability_summary,
        expectations=exp,
        mismatches=mismatches,
    )


def emit_report(report: AnalysisReport, fmt: str = "json") -> str:
    """Deterministic serialization; markdown carries the per-point table
    and the provenance of every verdict."""
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    if fmt != "markdown":
        raise ValidationError(f"unknown report format {fmt!r}")
    lines = [f"# Analysis: {report.structure}", ""]
    lines.append(f"- dimension: {report.dim}")
    lines.append(f"- seed: {report.seed}, version: {report.version}")
    for name, cert in sorted(report.certificates.items()):
        lines.append(f"- {name}: {'pass' if cert['ok'] else 'FAIL ' + cert['detail']}")
    for fam in report.families:
        ok = fam["certificate"]["ok"]
        lines.append(f"- family '{fam['name']}' (degree {fam['degree']}): "
                     f"{'pass' if ok else 'FAIL'}")
    for chain in report.chains:
        ok = chain["certificate"]["ok"]
        lines.append(f"- chain '{chain['name']}' (length {chain['length']}, "
                     f"anchored={chain['anchored']}): {'pass' if ok else 'FAIL'}")
    lines.append("")
    lines.append("| point | pencil type | corank1 | corank2 | W1 |")
    lines.append("|---|---|---|---|---|")
    for rec in report.points:
        pt = "(" + ", ".join(rec["point"]) + ")"
        if "error" in rec:
            lines.append(f"| {pt} | error: {rec['error']} | | | |")
            continue
        cr = rec["coranks"]
        lines.append(f"| {pt} | {rec['pencil_type']} | {cr['bracket1']} | "
                     f"{cr['bracket2']} | {rec.get('w1_dim', '')} |")
    lines.append("")
    lines.append(f"Modal pencil type: **{report.modal_type}**")
    if report.criterion:
        conj = report.criterion.get("conjectural")
        outcome = report.criterion["modal_outcome"]
        reason = report.criterion.get("reason", "")
        path = "conjectural path used" if conj else "conjectural path unused"
        detail = f" ({reason})" if reason else ""
        lines.append(f"Criterion: {path}; criterion {outcome}{detail} "
                     f"[{report.criterion['provenance']}]")
        lines.append(f"Cross-check decomposition: {report.criterion['cross_check']}")
    if report.lax:
        lines.append(f"Lax verdict: {report.lax['level']}"
                     + (f" of dimension {report.lax['concluded_dim']}"
                        if report.lax.get("concluded_dim") else ""))
    if report.integrability:
        lines.append(f"Integrability: {report.integrability['modal_outcome']} "
                     f"({report.integrability['independent']} independent, "
                     f"action dimension {report.integrability['action_dim']})")
    if report.expectations:
        if report.matched:
            lines.append("All declared expectations matched.")
        else:
            lines.append("MISMATCHES: " + "; ".join(report.mismatches))
    return "\n".join(lines) + "\n"
