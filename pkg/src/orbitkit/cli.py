"""Command line front end: orbitkit <command> <spec file> [options]."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import report as rp
from .coadjoint import Functional, orbit_data
from .decomposition import classify
from .dilation import validate_dilation
from .errors import OrbitkitError, SpecParseError
from .parser import SpecDocument, parse_spec
from .tiling import make_shannon_tiling, verify_tiling

COMMANDS = (
    "validate",
    "orbit",
    "dilation",
    "classify",
    "tiling",
    "irreducibility",
    "verify-identities",
    "report",
)


def load_document(path: str) -> SpecDocument:
    """Read a spec file, or a structured report (its embedded spec is re-parsed)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise SpecParseError(f"{path} is not valid UTF-8") from exc
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            text = data["input"]["spec"]
        except (ValueError, KeyError, TypeError) as exc:
            raise SpecParseError("structured report without an embedded spec") from exc
    return parse_spec(text)


def _seed(args) -> int:
    env = os.environ.get("ORBITKIT_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise SpecParseError(f"ORBITKIT_SEED must be an integer, got {env!r}") from None
    return args.seed


def _functionals(doc: SpecDocument, n: int) -> dict:
    out = doc.functionals()
    if "generic" not in out:
        out = {"generic": Functional.generic(n), **out}
    return out


def _need_dilation(doc: SpecDocument):
    if doc.dilation is None:
        raise SpecParseError("this command needs a 'dilation' line")
    alg = doc.algebra()
    alg.require_valid()
    spec = validate_dilation(alg, doc.dilation)
    spec.require_automorphism()
    return alg, spec


def cmd_validate(doc: SpecDocument, args) -> int:
    alg = doc.algebra()
    section = rp.algebra_section(doc, alg)
    print(rp.render_text({"algebra": section}), end="")
    return 0 if section["valid"] else 3


def cmd_orbit(doc: SpecDocument, args) -> int:
    alg = doc.algebra()
    alg.require_valid()
    o = rp.orbit_section(alg, orbit_data(alg))
    print(
        f"e = {rp._braces(o['e'])}; j = {rp._braces(o['j'])}; d = {o['d']}; P = {o['pfaffian_text']}"
    )
    print(f"cross-section free coordinates: {rp._braces(o['cross_section_free_coords'])}")
    print(f"P on cross-section: {o['pfaffian_on_cross_section']}")
    return 0


def cmd_dilation(doc: SpecDocument, args) -> int:
    if doc.dilation is None:
        raise SpecParseError("this command needs a 'dilation' line")
    alg = doc.algebra()
    alg.require_valid()
    spec = validate_dilation(alg, doc.dilation)
    print(rp.render_text({"algebra": rp.algebra_section(doc, alg), "dilation": rp.dilation_section(spec)}), end="")
    return 0 if spec.is_automorphism else 3


def cmd_classify(doc: SpecDocument, args) -> int:
    alg, spec = _need_dilation(doc)
    functionals = _functionals(doc, alg.n)
    dec = classify(alg, spec, orbit_data(alg), functionals)
    data = {
        "algebra": rp.algebra_section(doc, alg),
        "decomposition": rp.classification_section(alg, dec),
        "irreducibility": rp.irreducibility_section(alg, dec, functionals),
    }
    text = rp.render_text(data)
    print(text[text.index("decomposition:"):], end="")
    return 0


def cmd_tiling(doc: SpecDocument, args) -> int:
    alg, spec = _need_dilation(doc)
    t = make_shannon_tiling(spec, orbit_data(alg))
    seed = _seed(args)
    res = verify_tiling(t, args.samples, seed, workers=args.workers)
    print(f"band: {t.describe(alg.names)}")
    print(f"seed: {seed}")
    print(res.summary())
    return 0 if res.passed else 5


def cmd_irreducibility(doc: SpecDocument, args) -> int:
    alg, spec = _need_dilation(doc)
    functionals = _functionals(doc, alg.n)
    dec = classify(alg, spec, orbit_data(alg), functionals)
    section = rp.irreducibility_section(alg, dec, functionals)
    for label, entry in section.items():
        test = entry["rational_ideal_test"]
        detail = f"rank {test['rank']} of {test['required']}" if "rank" in test else test.get("reason", "")
        print(f"{label}: {entry['verdict']}; rational-ideal test {test['result']} ({detail})")
        for e in entry["evidence"]:
            print(f"  {e}")
    return 0


def cmd_verify_identities(doc: SpecDocument, args) -> int:
    alg = doc.algebra()
    alg.require_valid()
    spec = validate_dilation(alg, doc.dilation) if doc.dilation is not None else None
    res = rp.identity_checks(alg, spec, _functionals(doc, alg.n), _seed(args), args.identity_samples)
    text = rp.render_text({"algebra": rp.algebra_section(doc, alg), "identities": res})
    print(text[text.index("identities:"):], end="")
    return 0 if res["passed"] else 5


def cmd_report(doc: SpecDocument, args) -> int:
    data = rp.build_report(doc, _seed(args), args.samples)
    if args.format == "structured":
        sys.stdout.write(rp.render_structured(data))
    else:
        sys.stdout.write(rp.render_text(data))
    if rp.hard_failure(data):
        return 3 if not data["algebra"]["valid"] else 5
    return 0


HANDLERS = {
    "validate": cmd_validate,
    "orbit": cmd_orbit,
    "dilation": cmd_dilation,
    "classify": cmd_classify,
    "tiling": cmd_tiling,
    "irreducibility": cmd_irreducibility,
    "verify-identities": cmd_verify_identities,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbitkit", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", help="spec file (or a structured report to re-ingest)")
    p.add_argument("--samples", type=int, default=1000, help="tiling Monte Carlo samples")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (ORBITKIT_SEED overrides)")
    p.add_argument("--workers", type=int, default=1, help="processes for tiling sampling")
    p.add_argument("--identity-samples", type=int, default=100)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_document(args.spec)
        return HANDLERS[args.command](doc, args)
    except SpecParseError as exc:
        print(f"{args.spec}: parse error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OrbitkitError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
