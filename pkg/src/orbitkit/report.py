"""Assemble everything computed for one spec document into a plain dict, and render it."""

from __future__ import annotations

import json

import numpy as np

from .algebra import LieAlgebra
from .coadjoint import Functional, OrbitData, in_generic_layer, orbit_data
from .decomposition import DecompositionReport, bekka_driutti_check, classify
from .dilation import DilationSpec, density_profile, validate_dilation
from .errors import BasisNotThroughDerivedAlgebra, OrbitkitError
from .induced_rep import (
    GaussianSum,
    random_generic_lambda,
    verify_conjugation,
    verify_group_law,
    verify_homomorphism,
    verify_intertwining,
    verify_unitarity,
)
from .parser import SpecDocument
from .tiling import verify_tiling

__all__ = [
    "lambda_names",
    "orbit_section",
    "dilation_section",
    "classification_section",
    "irreducibility_section",
    "identity_checks",
    "build_report",
    "render_text",
    "render_structured",
]

CASE_NUMBER = {"NontrivialAction": 1, "TrivialActionNoncommutative": 2, "TrivialActionCommutative": 3}
UNITARITY_MAX_DIM = 3  # tensor quadrature cost grows like nodes^n


def lambda_names(n: int) -> list[str]:
    return [f"λ{k + 1}" for k in range(n)]


def _idx(indices) -> list[int]:
    return [k + 1 for k in indices]


def algebra_section(doc: SpecDocument, alg: LieAlgebra) -> dict:
    rep = alg.report
    out = {
        "dim": alg.n,
        "basis": list(alg.names),
        "valid": rep.ok,
        "violations": rep.lines(),
        "nilpotency_class": rep.nilpotency_class,
        "derived_dim": rep.derived_dim,
        "derived_is_initial_segment": rep.derived_is_initial_segment,
        "warnings": rep.warnings,
    }
    if doc.lattice and rep.ok:
        out["lattice_closed"] = alg.lattice_closure_check()
    return out


def orbit_section(alg: LieAlgebra, od: OrbitData) -> dict:
    names = lambda_names(alg.n)
    return {
        "e": _idx(od.e),
        "j": _idx(od.j),
        "d": od.d,
        "pfaffian": od.pfaffian.to_sparse(),
        "pfaffian_text": od.pfaffian.format(names),
        "pfaffian_on_cross_section": od.restricted_pfaffian.format(names),
        "cross_section_free_coords": _idx(od.lambda_coords),
        "omega": od.omega_descriptor(),
    }


def dilation_section(spec: DilationSpec) -> dict:
    out = {"a": [str(x) for x in spec.a], **spec.flags()}
    out["violations"] = [[i + 1, j + 1, k + 1] for i, j, k in spec.violations]
    if spec.is_automorphism:
        prof = density_profile(spec)
        out["density"] = {
            "status": list(prof.status),
            "overall": prof.overall,
            "evidence": list(prof.evidence),
        }
    return out


def classification_section(alg: LieAlgebra, rep: DecompositionReport) -> dict:
    return {
        "case": rep.case,
        "case_number": CASE_NUMBER[rep.case],
        "descriptor": rep.fiber_descriptor,
        "notes": list(rep.fiber_notes),
        "multiplicity": rep.multiplicity,
        "det_modulus": str(rep.det_modulus),
        "tiling": None
        if rep.tiling is None
        else {
            "pivot": rep.tiling.pivot + 1,
            "low": str(rep.tiling.low),
            "high": str(rep.tiling.high),
            "band": rep.tiling.describe(alg.names),
        },
    }


def irreducibility_section(alg: LieAlgebra, rep: DecompositionReport, functionals: dict) -> dict:
    out = {}
    for label, verdict in rep.irreducibility.items():
        entry = {"verdict": verdict.verdict, "evidence": list(verdict.evidence)}
        try:
            bd = bekka_driutti_check(alg, functionals[label])
            entry["rational_ideal_test"] = {"result": bd.result, "rank": bd.rank, "required": bd.required}
        except BasisNotThroughDerivedAlgebra as exc:
            entry["rational_ideal_test"] = {"result": "NotApplicable", "reason": str(exc)}
        out[label] = entry
    return out


def _pick_lambda(alg: LieAlgebra, functionals: dict, seed: int) -> tuple:
    """First declared rational functional in the generic layer, else a seeded random one."""
    od = orbit_data(alg)
    for lam in functionals.values():
        if lam.is_rational and in_generic_layer(alg, lam) and od.pfaffian(list(lam.entries)):
            return tuple(lam.entries)
    return random_generic_lambda(alg, np.random.default_rng(seed))


def identity_checks(
    alg: LieAlgebra, spec: DilationSpec | None, functionals: dict, seed: int, samples: int = 100
) -> dict:
    lam = _pick_lambda(alg, functionals, seed)
    results = [verify_homomorphism(alg, lam, samples, seed)]
    skipped = []
    if spec is not None and spec.is_automorphism:
        for m in range(-2, 3):
            results.append(verify_intertwining(spec, lam, m, samples, seed + 10 + m))
        results.append(verify_group_law(spec, samples, seed + 20))
        results.append(verify_conjugation(spec, samples, seed + 21))
        if alg.n <= UNITARITY_MAX_DIM:
            f = GaussianSum.random(alg.n, np.random.default_rng(seed + 22))
            results.append(verify_unitarity(spec, f, 1))
        else:
            skipped.append(f"unitarity quadrature skipped for dimension {alg.n} > {UNITARITY_MAX_DIM}")
    elif spec is not None:
        skipped.append("dilation is not an automorphism; dilation identities skipped")
    return {
        "lambda": [str(x) for x in lam],
        "checks": [
            {
                "name": r.name,
                "max_error": float(r.max_error),
                "threshold": r.threshold,
                "samples": r.samples,
                "seed": r.seed,
                "passed": r.passed,
            }
            for r in results
        ],
        "skipped": skipped,
        "passed": all(r.passed for r in results),
    }


def build_report(doc: SpecDocument, seed: int = 0, samples: int = 1000) -> dict:
    alg = doc.algebra()
    report: dict = {
        "input": {"spec": doc.canonical_text(), "seed": seed, "tiling_samples": samples},
        "algebra": algebra_section(doc, alg),
    }
    if not alg.report.ok:
        return report
    od = orbit_data(alg)
    report["orbit"] = orbit_section(alg, od)
    functionals = doc.functionals() or {"generic": Functional.generic(alg.n)}
    if "generic" not in functionals:
        functionals = {"generic": Functional.generic(alg.n), **functionals}
    spec = None
    if doc.dilation is not None:
        spec = validate_dilation(alg, doc.dilation)
        report["dilation"] = dilation_section(spec)
        if spec.is_automorphism:
            dec = classify(alg, spec, od, functionals)
            report["decomposition"] = classification_section(alg, dec)
            report["irreducibility"] = irreducibility_section(alg, dec, functionals)
            if dec.tiling is not None:
                tr = verify_tiling(dec.tiling, samples, seed)
                report["tiling_check"] = {
                    "samples": tr.samples,
                    "failures": tr.failures,
                    "seed": tr.seed,
                    "max_abs_index": tr.max_abs_index,
                }
    try:
        report["identities"] = identity_checks(alg, spec, functionals, seed)
    except OrbitkitError as exc:
        report["identities"] = {"error": str(exc), "passed": False}
    return report


def hard_failure(report: dict) -> bool:
    if not report["algebra"]["valid"]:
        return True
    if "tiling_check" in report and report["tiling_check"]["failures"]:
        return True
    return not report.get("identities", {}).get("passed", True)


def render_structured(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    out = []
    alg = report["algebra"]
    out.append(f"algebra: dim {alg['dim']}, basis {' '.join(alg['basis'])}")
    out.append(f"  valid: {'yes' if alg['valid'] else 'no'}")
    out.extend(f"  {v}" for v in alg["violations"])
    if alg["valid"]:
        out.append(f"  nilpotency class: {alg['nilpotency_class']}")
        out.append(f"  derived algebra dim: {alg['derived_dim']}")
        out.extend(f"  warning: {w}" for w in alg["warnings"])
    if "lattice_closed" in alg:
        out.append(f"  lattice closed: {'yes' if alg['lattice_closed'] else 'no'}")
    if "orbit" in report:
        o = report["orbit"]
        out.append("orbit:")
        out.append(f"  e = {_braces(o['e'])}; j = {_braces(o['j'])}; d = {o['d']}; P = {o['pfaffian_text']}")
        out.append(f"  cross-section free coordinates: {_braces(o['cross_section_free_coords'])}")
        out.append(f"  P on cross-section: {o['pfaffian_on_cross_section']}")
        out.append(f"  generic layer: {o['omega']}")
    if "dilation" in report:
        dl = report["dilation"]
        out.append(f"dilation: a = ({', '.join(dl['a'])})")
        for key in ("is_automorphism", "is_expansive", "acts_trivially_on_lambda", "det_modulus"):
            out.append(f"  {key}: {dl[key]}")
        for v in dl["violations"]:
            out.append(f"  automorphism violated at bracket ({v[0]},{v[1]}) -> {v[2]}")
        if "density" in dl:
            out.append(f"  density: {dl['density']['overall']} ({', '.join(dl['density']['status'])})")
            out.extend(f"    {line}" for line in dl["density"]["evidence"])
    if "decomposition" in report:
        dc = report["decomposition"]
        out.append(f"decomposition: case {dc['case_number']} ({dc['case']})")
        out.append(f"  fibers: {dc['descriptor']}")
        out.extend(f"  {note}" for note in dc["notes"])
        out.append(f"  multiplicity: {dc['multiplicity']}")
        if dc["tiling"]:
            out.append(f"  tiling band: {dc['tiling']['band']}")
    if "irreducibility" in report:
        out.append("irreducibility:")
        for label, entry in report["irreducibility"].items():
            out.append(f"  {label}: {entry['verdict']}")
            out.extend(f"    {e}" for e in entry["evidence"])
    if "tiling_check" in report:
        tc = report["tiling_check"]
        out.append(f"tiling check: {tc['failures']} failures / {tc['samples']} (seed {tc['seed']})")
    if "identities" in report:
        ident = report["identities"]
        out.append("identities:")
        if "error" in ident:
            out.append(f"  error: {ident['error']}")
        else:
            out.append(f"  lambda = ({', '.join(ident['lambda'])})")
            for c in ident["checks"]:
                mark = "ok" if c["passed"] else "FAIL"
                out.append(f"  {c['name']}: {c['max_error']:.3e} (< {c['threshold']:g}) {mark}")
            out.extend(f"  {s}" for s in ident["skipped"])
    return "\n".join(out) + "\n"


def _braces(values) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"
