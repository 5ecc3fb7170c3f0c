"""Which of the three direct-integral decompositions the wavelet representation falls into,
and the evidence for irreducibility of the fiber representations restricted to Gamma_alpha."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LieAlgebra
from .catalog import heisenberg
from .coadjoint import Functional, OrbitData, orbit_data, radical as radical_of
from .dilation import DISCRETE, DENSE, DensityProfile, DilationSpec, density_profile, lemma_detone_check
from .errors import BasisNotThroughDerivedAlgebra, InternalInconsistency
from .linalg import Subspace, rank
from .poly import Poly
from .tiling import TilingSpec, make_shannon_tiling

__all__ = [
    "NONTRIVIAL_ACTION",
    "TRIVIAL_NONCOMMUTATIVE",
    "TRIVIAL_COMMUTATIVE",
    "IRREDUCIBLE",
    "NOT_IMPLIED",
    "REDUCIBLE_LIKELY",
    "UNKNOWN",
    "BDResult",
    "Verdict",
    "DecompositionReport",
    "classify",
    "bekka_driutti_check",
    "fiber_irreducibility",
]

NONTRIVIAL_ACTION = "NontrivialAction"
TRIVIAL_NONCOMMUTATIVE = "TrivialActionNoncommutative"
TRIVIAL_COMMUTATIVE = "TrivialActionCommutative"

IRREDUCIBLE = "Irreducible"
NOT_IMPLIED = "NotImpliedIrreducible"
REDUCIBLE_LIKELY = "ReducibleLikely"
UNKNOWN = "Unknown"

SINGLETON = "Singleton"
COUNTABLY_INFINITE = "CountablyInfinite"

DESCRIPTORS = {
    NONTRIVIAL_ACTION: ("∫_E ⊕_{κ∈I} Ind_{Γ_α}^{Γ_α⋊H}(π_λ|_{Γ_α}) dλ", ()),
    TRIVIAL_NONCOMMUTATIVE: ("∫_Λ∫_𝕋 ⊕_{κ∈J} π̃_{λ,σ}|_G dσ dλ", ("π̃_{λ,σ}(α) = C(α)χ_σ(α)",)),
    TRIVIAL_COMMUTATIVE: ("∫_Λ π̃_λ|_{Γ⋊H} dλ", ("π̃_λ(x,α⁰) = e^{2πi⟨x,λ⟩}",)),
}

# (algebra factory, eigenvalues) pairs for which reducibility of the fibers is known
KNOWN_REDUCIBLE = [
    (heisenberg, (2, 2, 1), "Heisenberg group with a = (2,2,1): the span of the fiber orbit is not dense"),
]


@dataclass(frozen=True)
class BDResult:
    result: str
    rank: int
    required: int
    evidence: tuple = ()


@dataclass(frozen=True)
class Verdict:
    verdict: str
    evidence: tuple = ()


@dataclass
class DecompositionReport:
    case: str
    d: int
    multiplicity: str
    fiber_descriptor: str
    fiber_notes: tuple
    det_modulus: Fraction
    tiling: TilingSpec | None = None
    density: DensityProfile | None = None
    irreducibility: dict = field(default_factory=dict)


# Bekka-Driutti rank test --------------------------------------------------------------

def _coefficient_rows(tails: list[tuple]) -> list[list[Fraction]]:
    """Row i holds the coefficients of x_i = sum_b c_b tails[b][i] over (b, monomial).

    With the c_b chosen independent over the field generated by the symbols,
    Q-linear independence of the x_i is linear independence of these rows.
    """
    width = len(tails[0]) if tails else 0
    keys: dict[tuple, int] = {}
    entries: list[dict[int, Fraction]] = [dict() for _ in range(width)]
    for b, tail in enumerate(tails):
        for i, x in enumerate(tail):
            if isinstance(x, Poly):
                items = x.terms.items()
            else:
                items = [((), x)] if x else []
            for mono, c in items:
                col = keys.setdefault((b, mono), len(keys))
                entries[i][col] = c
    return [[row.get(c, Fraction(0)) for c in range(len(keys))] for row in entries]


def bekka_driutti_check(alg: LieAlgebra, lam: Functional, radical: Subspace | None = None) -> BDResult:
    """Whether the radical of lambda contains an element whose coordinates beyond
    the derived algebra are linearly independent over Q."""
    rep = alg.report
    if not rep.derived_is_initial_segment:
        raise BasisNotThroughDerivedAlgebra("derived algebra is not spanned by the first basis vectors")
    m = rep.derived_dim
    required = alg.n - m
    if radical is None:
        radical = radical_of(alg, lam)
    tails = [tuple(v[m:]) for v in radical.basis]
    evidence = [f"derived algebra = span of the first {m} basis vectors; need rank {required}"]
    if lam.mode == "qstruct":
        if any(isinstance(x, Poly) and x.degree() > 1 for t in tails for x in t):
            return BDResult(NOT_IMPLIED, 0, required, tuple(evidence + [
                "radical tail has entries nonlinear in the declared symbols; Q-dimension not decided"
            ]))
        evidence.append("radical computed treating the declared symbols as independent indeterminates")
    elif lam.mode in ("generic", "mixed"):
        evidence.append("generic symbols treated as algebraically independent")
    r = rank(_coefficient_rows(tails)) if tails and required else 0
    evidence.append(f"Q-rank of achievable tail coordinates = {r}")
    result = IRREDUCIBLE if r == required else NOT_IMPLIED
    return BDResult(result, r, required, tuple(evidence))


# verdicts ----------------------------------------------------------------------------

def _known_reducible(spec: DilationSpec) -> str | None:
    for factory, a, note in KNOWN_REDUCIBLE:
        ref = factory()
        if ref.n == spec.n and ref.nonzero_constants() == spec.algebra.nonzero_constants():
            if tuple(Fraction(x) for x in a) == spec.a:
                return note
    return None


def fiber_irreducibility(
    spec: DilationSpec,
    orbit: OrbitData,
    profile: DensityProfile,
    bd: BDResult | None,
) -> Verdict:
    evidence = []
    verdict = None
    if spec.is_expansive:
        evidence.append("expansive: Gamma_alpha dense, fibers restrict irreducibly")
        verdict = IRREDUCIBLE
    else:
        evidence.append("not expansive")
    if profile.overall == DENSE:
        evidence.append("density profile: Gamma_alpha dense in N")
        verdict = verdict or IRREDUCIBLE
    else:
        evidence.append(f"density profile: {profile.overall}")
    if bd is None:
        evidence.append("rational-ideal test not applicable")
    else:
        evidence.append(f"rational-ideal test: {bd.result} (rank {bd.rank} of {bd.required})")
        if bd.result == IRREDUCIBLE:
            evidence.append("irreducible already on Gamma, hence on Gamma_alpha")
            verdict = verdict or IRREDUCIBLE
    if verdict is None:
        discrete = [k for k in orbit.j if profile.status[k] == DISCRETE]
        if discrete:
            names = ", ".join(f"X{k + 1}" for k in discrete)
            evidence.append(f"cross-section coordinate(s) {names} discrete (heuristic)")
            known = _known_reducible(spec)
            if known:
                evidence.append(f"matches proven reducible example: {known}")
            verdict = REDUCIBLE_LIKELY
        else:
            verdict = UNKNOWN
    return Verdict(verdict, tuple(evidence))


def classify(
    alg: LieAlgebra,
    spec: DilationSpec,
    orbit: OrbitData | None = None,
    functionals: dict | None = None,
) -> DecompositionReport:
    """Select the decomposition case and gather irreducibility evidence.

    `functionals` maps a label to a Functional for the rational-ideal test;
    by default only the generic functional is examined.
    """
    alg.require_valid()
    spec.require_automorphism()
    orbit = orbit or orbit_data(alg)
    tiling = None
    if not spec.acts_trivially_on_lambda:
        case = NONTRIVIAL_ACTION
        tiling = make_shannon_tiling(spec, orbit)
    elif not alg.is_abelian():
        case = TRIVIAL_NONCOMMUTATIVE
        if not lemma_detone_check(spec):
            raise InternalInconsistency("trivial action on the cross-section with |det A| != 1")
    else:
        case = TRIVIAL_COMMUTATIVE
    descriptor, notes = DESCRIPTORS[case]
    profile = density_profile(spec)
    report = DecompositionReport(
        case,
        orbit.d,
        COUNTABLY_INFINITE if orbit.d >= 1 else SINGLETON,
        descriptor,
        notes,
        spec.det_modulus,
        tiling,
        profile,
    )
    if functionals is None:
        functionals = {"generic": Functional.generic(alg.n)}
    for label, lam in functionals.items():
        bd = None
        if alg.report.derived_is_initial_segment:
            bd = bekka_driutti_check(alg, lam)
        report.irreducibility[label] = fiber_irreducibility(spec, orbit, profile, bd)
    return report
