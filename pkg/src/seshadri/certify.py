"""The Seshadri engine: certified lower bounds over the irreducible-class
cone, upper-bound witnesses from explicit curves, and closed-form reductions.

The Seshadri constant of a nef bundle E at x is the infimum over irreducible
curves C through x of mu_min(E pulled back to the normalization) divided by
mult_x C.  A lower bound t is certified by proving, with exact Farkas
multipliers over a polyhedral cone of candidate curve classes,

    min(stage degree forms) - t * (multiplicity upper bound) >= 0,

together with per-ray slope checks on the finitely many special classes and
exact contributions of the explicitly excluded curves.  Upper bounds come
from witness curves with exactly known restriction data.  Results are always
reported as an interval [lower, upper]: the defining infimum ranges over
infinitely many curves, so a bare number would overstate what was proved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, Mapping, Optional, Sequence, Union

from . import cones, docio
from .ambient import (
    AmbientSpace,
    CurveClassForm,
    DivisorClass,
    MultUpperBound,
    ProbeSet,
    SpecialRay,
    default_probes,
    irreducible_class_cone,
    mult_upper_bound_form,
    plane_with_marked_points,
    surface_curve_form,
)
from .bundle import (
    IDEAL_EXTENSION,
    ON_CURVE_SPLIT,
    SPLIT,
    BundlePresentation,
    restriction_model,
)
from .forms import LinForm, as_fraction, format_rat, rat_to_doc
from .slope import rational_ample_rule


@dataclass(frozen=True)
class PiecewiseForm:
    """min(plus) - min(minus); an empty minus list means plain min(plus)."""

    plus: tuple[LinForm, ...]
    minus: tuple[tuple[str, LinForm], ...] = ()


@dataclass(frozen=True)
class TargetCertificate:
    plus_index: int
    form: LinForm
    multipliers: tuple[tuple[str, Fraction], ...]  # nonzero entries, by constraint label


@dataclass(frozen=True)
class SubconeCertificate:
    label: str
    added: tuple[cones.Constraint, ...]
    targets: tuple[TargetCertificate, ...]


@dataclass(frozen=True)
class Counterexample:
    subcone_label: str
    plus_index: int
    ray: tuple[int, ...]
    target: LinForm
    value: Fraction


@dataclass(frozen=True)
class ConeInequalityCertificate:
    """Machine-checkable proof that min(plus) - level*min(minus) >= 0.

    The cone is split into one subcone per minus form (the subcone where that
    form attains the min, cut out by the split constraints in declaration
    order); on each subcone every plus form minus the scaled active minus
    form carries Farkas multipliers over the subcone's constraints.
    Replaying the multipliers reproduces each target form exactly.
    """

    variables: tuple[str, ...]
    base_constraints: tuple[cones.Constraint, ...]
    base_rays: tuple[tuple[int, ...], ...]
    plus: tuple[LinForm, ...]
    minus: tuple[tuple[str, LinForm], ...]
    level: Fraction
    subcones: tuple[SubconeCertificate, ...]
    counterexample: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def split_plan(
    minus: Sequence[tuple[str, LinForm]],
) -> list[tuple[str, list[cones.Constraint]]]:
    """Deterministic subcone decomposition resolving min(minus).

    Subcone j carries the constraints minus_k - minus_j >= 0 for every other
    k, in declaration order; together the subcones cover the cone because
    the min is always attained.
    """
    if not minus:
        return [("full", [])]
    plan = []
    for j, (name_j, form_j) in enumerate(minus):
        added = [
            cones.Constraint(f"split:{name_j}<={name_k}", form_k - form_j)
            for k, (name_k, form_k) in enumerate(minus)
            if k != j
        ]
        plan.append((f"mult:{name_j}", added))
    return plan


def prove_nonneg_on_cone(
    form: Union[PiecewiseForm, LinForm],
    cone,
    level: Union[int, Fraction] = 1,
) -> ConeInequalityCertificate:
    """Certify min(plus) - level*min(minus) >= 0 on a polyhedral cone.

    Returns a certificate with Farkas multipliers per subcone, or a
    counterexample ray where some resolved linear target is negative.  All
    forms must be homogeneous (the LinForm type admits nothing else).
    """
    if isinstance(form, LinForm):
        form = PiecewiseForm(plus=(form,))
    geometry = cone.geometry() if hasattr(cone, "geometry") else cone
    level = as_fraction(level)
    base_rays = geometry.extremal_rays()
    subcones = []
    counterexample = None
    for label, added in split_plan(form.minus):
        sub = geometry.with_constraints(added)
        active = None
        for name_j, form_j in form.minus:
            if label == f"mult:{name_j}":
                active = form_j
                break
        targets = []
        for i, plus_form in enumerate(form.plus):
            target = plus_form if active is None else plus_form - active.scale(level)
            result = cones.prove_linear_nonneg(sub, target)
            if not result.ok:
                counterexample = Counterexample(
                    subcone_label=label,
                    plus_index=i,
                    ray=result.counterexample,
                    target=target,
                    value=target.evaluate(result.counterexample),
                )
                break
            entries = tuple(
                (sub.constraints[k].label, v)
                for k, v in enumerate(result.multipliers)
                if v != 0
            )
            targets.append(TargetCertificate(i, target, entries))
        if counterexample is not None:
            break
        subcones.append(SubconeCertificate(label, tuple(added), tuple(targets)))
    return ConeInequalityCertificate(
        variables=geometry.variables,
        base_constraints=geometry.constraints,
        base_rays=base_rays,
        plus=form.plus,
        minus=form.minus,
        level=level,
        subcones=tuple(subcones),
        counterexample=counterexample,
    )


@dataclass(frozen=True)
class ExplicitCurve:
    """A concrete curve with known class data and multiplicity at x.

    ``excluded_from_cone`` marks curves the symbolic cone deliberately
    leaves out (e.g. the unique conic through the marked points, for which
    the Bezout constraint does not apply); those must be checked separately
    for any lower bound to be valid.
    """

    label: str
    values: tuple[tuple[str, int], ...]
    mult: int
    locus: str
    excluded_from_cone: bool = False


MU_MIN_SPLIT_RULE = "min-split"
MU_MIN_QUOTIENT_RULE = "quotient"


@dataclass(frozen=True)
class WitnessReport:
    label: str
    values: tuple[tuple[str, int], ...]
    stages: tuple[int, ...]
    mu_min_rule: str
    mu_min: Fraction
    mult: int
    contribution: Fraction
    locus: str
    excluded_from_cone: bool


def exact_mu_min(E: BundlePresentation, stages: Sequence[int]) -> tuple[Fraction, str]:
    """Exact mu_min of E on a curve with the given stage degrees.

    Split data gives the minimum degree.  For a two-stage extension the
    quotient realizes mu_min exactly when its degree is at most the sub
    degree; otherwise the restriction data does not pin mu_min down and the
    witness is rejected.
    """
    if E.kind in (SPLIT, ON_CURVE_SPLIT):
        return Fraction(min(stages)), MU_MIN_SPLIT_RULE
    quot_degree = stages[-1]
    if any(quot_degree > s for s in stages[:-1]):
        raise ValueError(
            f"stage degrees {tuple(stages)} do not determine mu_min exactly"
        )
    return Fraction(quot_degree), MU_MIN_QUOTIENT_RULE


def seshadri_upper_witness(
    E: BundlePresentation, C: CurveClassForm, witness: ExplicitCurve
) -> WitnessReport:
    """Exact contribution mu_min / mult of a witness curve.

    The contribution is an upper bound for the Seshadri constant at every
    point of the witness locus.
    """
    if witness.mult <= 0:
        raise ValueError("witness multiplicity must be positive")
    values = dict(witness.values)
    stages = restriction_model(E, C).at(values)
    mu_min, rule = exact_mu_min(E, stages)
    return WitnessReport(
        label=witness.label,
        values=witness.values,
        stages=stages,
        mu_min_rule=rule,
        mu_min=mu_min,
        mult=witness.mult,
        contribution=mu_min / witness.mult,
        locus=witness.locus,
        excluded_from_cone=witness.excluded_from_cone,
    )


@dataclass(frozen=True)
class SpecialRayReport:
    name: str
    values: tuple[int, ...]
    stages: tuple[int, ...]
    extension_bound: Fraction
    ample_upgraded: bool
    bound: Fraction
    mult: int = 1


@dataclass(frozen=True)
class FailureReport:
    """Certification failure, naming the offending subcone, ray, or witness.

    Not a proof that the Seshadri constant is below the requested level --
    only that this engine cannot certify it.
    """

    scenario: Optional[str]
    level: Fraction
    location: str
    reason: str

    def to_doc(self) -> dict:
        return {
            "format": docio.FORMAT,
            "kind": "failure-report",
            "scenario": self.scenario,
            "level": rat_to_doc(self.level),
            "location": self.location,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class SeshadriCertificate:
    """Certified interval for the Seshadri constant of a bundle.

    ``lower`` holds at every point of the ambient; ``upper`` holds at the
    points of the best witness locus; ``exact`` means the two coincide.
    """

    scenario: Optional[str]
    space: AmbientSpace
    bundle: BundlePresentation
    curve: CurveClassForm
    level: Fraction
    mult_mode: str  # "variable" | "probe-min"
    cone_certificate: ConeInequalityCertificate
    ray_reports: tuple[SpecialRayReport, ...]
    witnesses: tuple[WitnessReport, ...]
    lower: Fraction
    upper: Optional[Fraction]
    exact: bool

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError("certificate interval has lower > upper")
        for w in self.witnesses:
            if w.contribution < self.lower:
                raise ValueError(f"witness {w.label} contributes below the lower bound")

    def to_doc(self) -> dict:
        cert = self.cone_certificate
        return {
            "format": docio.FORMAT,
            "kind": "cone-certification",
            "scenario": self.scenario,
            "level": rat_to_doc(self.level),
            "ambient": docio.ambient_to_doc(self.space),
            "bundle": docio.bundle_to_doc(self.bundle),
            "curve": docio.curve_to_doc(self.curve),
            "target": {
                "mult_mode": self.mult_mode,
                "plus": [docio.form_to_doc(f) for f in cert.plus],
                "minus": [
                    {"name": name, "coeffs": docio.form_to_doc(f)}
                    for name, f in cert.minus
                ],
            },
            "subcones": [
                {
                    "label": sc.label,
                    "added": [docio.constraint_to_doc(c) for c in sc.added],
                    "targets": [
                        {
                            "plus_index": t.plus_index,
                            "coeffs": docio.form_to_doc(t.form),
                            "multipliers": [
                                {"constraint": label, "value": rat_to_doc(v)}
                                for label, v in t.multipliers
                            ],
                        }
                        for t in sc.targets
                    ],
                }
                for sc in cert.subcones
            ],
            "special_rays": [
                {
                    "name": r.name,
                    "values": list(r.values),
                    "stages": list(r.stages),
                    "extension_bound": rat_to_doc(r.extension_bound),
                    "ample_upgraded": r.ample_upgraded,
                    "bound": rat_to_doc(r.bound),
                    "mult": r.mult,
                }
                for r in self.ray_reports
            ],
            "witnesses": [_witness_doc(w) for w in self.witnesses],
            "interval": _interval_doc(self.lower, self.upper, self.exact),
        }


def _witness_doc(w: WitnessReport) -> dict:
    return {
        "label": w.label,
        "values": [[name, value] for name, value in w.values],
        "stages": list(w.stages),
        "mu_min_rule": w.mu_min_rule,
        "mu_min": rat_to_doc(w.mu_min),
        "mult": w.mult,
        "contribution": rat_to_doc(w.contribution),
        "locus": w.locus,
        "excluded_from_cone": w.excluded_from_cone,
    }


def _interval_doc(lower, upper, exact) -> dict:
    return {
        "lower": rat_to_doc(lower) if lower is not None else None,
        "upper": rat_to_doc(upper) if upper is not None else None,
        "exact": exact,
    }


LowerBoundOutcome = Union[SeshadriCertificate, FailureReport]


def seshadri_lower_bound(
    E: BundlePresentation,
    space: AmbientSpace,
    level: Union[int, str, Fraction],
    *,
    curve: Optional[CurveClassForm] = None,
    probes: Optional[ProbeSet] = None,
    witnesses: Sequence[ExplicitCurve] = (),
    scenario: Optional[str] = None,
) -> LowerBoundOutcome:
    """Certify level <= Seshadri constant of E at every point, or report why not.

    Main cone: proves min(stage forms) - level * mult_bound >= 0 with exact
    Farkas multipliers, where the multiplicity bound is the explicit cone
    variable when present and otherwise the min of the applicable probe
    pairings.  Special rays: checks the extension-lemma slope bound, upgraded
    to 1 by the rational-curve rule when ampleness is declared; a ray whose
    stage bound is negative without that upgrade fails safe.  Excluded
    curves: their exact contributions must reach the level.
    """
    level = as_fraction(level)
    if curve is None:
        if E.kind == IDEAL_EXTENSION and space.kind == "plane":
            curve = plane_with_marked_points(len(E.marked_points))
        else:
            curve = surface_curve_form(space)
    model = restriction_model(E, curve)

    if curve.mult_var is not None:
        minus: tuple[tuple[str, LinForm], ...] = ((curve.mult_var, curve.mult_form()),)
        mult_mode = "variable"
    else:
        probes = probes if probes is not None else default_probes(space)
        bound_form = mult_upper_bound_form(space, probes, curve)
        if not bound_form.forms:
            return FailureReport(
                scenario=scenario,
                level=level,
                location="main cone",
                reason="no applicable probe; multiplicity bound is unbounded",
            )
        minus = bound_form.forms
        mult_mode = "probe-min"

    cone_cert = prove_nonneg_on_cone(
        PiecewiseForm(plus=model.stages, minus=minus), curve.cone, level
    )
    if not cone_cert.ok:
        cex = cone_cert.counterexample
        return FailureReport(
            scenario=scenario,
            level=level,
            location=f"subcone {cex.subcone_label}",
            reason=(
                f"target {cex.target} evaluates to {format_rat(cex.value)} "
                f"on ray {cex.ray}"
            ),
        )

    ray_reports = []
    for ray in irreducible_class_cone(space).special:
        stages = model.at(dict(zip(curve.cone.variables, ray.values)))
        extension_bound = Fraction(min(stages))
        bound = extension_bound
        upgraded = False
        if bound < level and E.ample_declared and ray.smooth and ray.rational:
            bound = max(bound, rational_ample_rule(E, ray).value)
            upgraded = True
        if bound < level:
            return FailureReport(
                scenario=scenario,
                level=level,
                location=f"ray {ray.name}",
                reason=(
                    f"slope bound {format_rat(bound)} below level "
                    f"{format_rat(level)} (stages {stages})"
                ),
            )
        ray_reports.append(
            SpecialRayReport(
                name=ray.name,
                values=ray.values,
                stages=stages,
                extension_bound=extension_bound,
                ample_upgraded=upgraded,
                bound=bound,
            )
        )

    witness_reports = []
    for witness in witnesses:
        report = seshadri_upper_witness(E, curve, witness)
        if report.contribution < level:
            return FailureReport(
                scenario=scenario,
                level=level,
                location=f"witness {witness.label}",
                reason=(
                    f"contribution {format_rat(report.contribution)} below level "
                    f"{format_rat(level)}"
                ),
            )
        witness_reports.append(report)

    upper = min((w.contribution for w in witness_reports), default=None)
    return SeshadriCertificate(
        scenario=scenario,
        space=space,
        bundle=E,
        curve=curve,
        level=level,
        mult_mode=mult_mode,
        cone_certificate=cone_cert,
        ray_reports=tuple(ray_reports),
        witnesses=tuple(witness_reports),
        lower=level,
        upper=upper,
        exact=upper is not None and upper == level,
    )


def additivity_lower_bound(
    eps_nef_part: Union[int, str, Fraction],
    eps_line: Union[int, str, Fraction],
    *,
    nef_declared: bool,
    line_ample_gg_declared: bool,
) -> Fraction:
    """Lower bound from the tensor decomposition E = (E tensor L^-1) tensor L.

    Requires the declared facts: E tensor L^-1 nef (so its Seshadri constant
    is >= 0) and L ample and globally generated (so its Seshadri constant is
    >= 1).  Then eps(E) >= eps(E tensor L^-1) + eps(L).
    """
    if not nef_declared:
        raise ValueError("nefness of E tensor L^-1 is not declared")
    if not line_ample_gg_declared:
        raise ValueError("L is not declared ample and globally generated")
    nef_part = as_fraction(eps_nef_part)
    line_part = as_fraction(eps_line)
    if nef_part < 0:
        raise ValueError("the nef part contributes a nonnegative Seshadri constant")
    if line_part < 1:
        raise ValueError("an ample globally generated line bundle contributes >= 1")
    return nef_part + line_part


@dataclass(frozen=True)
class EquivariantResult:
    family_mins: tuple[int, ...]
    bound: Fraction
    exact: bool


def equivariant_line_bound(E: BundlePresentation) -> EquivariantResult:
    """Lower bound from restriction to the torus-invariant lines of P^n.

    The Seshadri constant at any point is at least the min over the line
    families of mu_min of the splitting; when the splitting type is the same
    on every line (declared), the bound is the exact value.
    """
    if E.kind != "equivariant_lines":
        raise ValueError("equivariant bound needs per-line-family splitting data")
    mins = tuple(min(family) for family in E.line_families)
    for index, value in enumerate(mins):
        if value <= 0:
            raise ValueError(
                f"not ample on line family {index}: minimum degree {value} <= 0"
            )
    exact = E.uniform_splitting
    if exact:
        normalized = {tuple(sorted(f)) for f in E.line_families}
        if len(normalized) != 1:
            raise ValueError("uniform splitting declared but families differ")
    return EquivariantResult(family_mins=mins, bound=Fraction(min(mins)), exact=exact)


@dataclass(frozen=True)
class ConstructionResult:
    r: int
    upper: Fraction
    valid: bool
    delta: Fraction


def small_seshadri_construction(
    delta: Union[int, str, Fraction], r: Optional[int] = None
) -> ConstructionResult:
    """Ample bundles with arbitrarily small Seshadri constants.

    A stable degree-1 bundle of rank r on a curve factor gives an ample
    bundle whose Seshadri constant at every point is at most 1/r; choosing
    r = floor(1/delta) + 1 makes the bound fall below any requested delta.
    """
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if r is None:
        r = floor(Fraction(1) / delta) + 1
    if r < 1:
        raise ValueError("rank must be a positive integer")
    upper = Fraction(1, r)
    return ConstructionResult(r=r, upper=upper, valid=upper < delta, delta=delta)


def p2_line_bundle_seshadri(cls: DivisorClass) -> Fraction:
    """Seshadri constant of an ample line bundle O(d) on the plane: d.

    Every curve C through x satisfies d * deg(C) >= d * mult_x(C), so the
    ratio is at least d, and a line through x attains it.  Valid at every
    point.
    """
    if cls.space.kind != "plane":
        raise ValueError("this oracle only evaluates plane line bundles")
    d = cls.coeffs[0]
    if d < 1:
        raise ValueError(f"O({d}) is not ample on the plane")
    return Fraction(d)


LINE_ORACLES: Mapping[str, Callable[[DivisorClass], Fraction]] = {
    "p2-lines": p2_line_bundle_seshadri,
}


@dataclass(frozen=True)
class ReductionResult:
    epsilon: Fraction
    oracle_value: Fraction
    floor: Fraction
    floor_holds: bool


def semistable_reduction(
    rank_e: int,
    det_q1: DivisorClass,
    rank_q1: int,
    line_oracle: Callable[[DivisorClass], Fraction],
    *,
    hypothesis_declared: bool,
) -> ReductionResult:
    """Reduce the Seshadri constant of E to that of det(Q1) on a surface.

    Requires the declared hypothesis that the minimal slope of E on every
    curve equals the slope of the minimal Harder-Narasimhan quotient Q1
    (e.g. E semistable with vanishing discriminant).  Then

        eps(E, x) = eps(det Q1, x) / rank(Q1),

    and eps(E, x) >= 1/rank(E) whenever the line-bundle value is >= 1.
    """
    if not hypothesis_declared:
        raise ValueError(
            "reduction needs the declared hypothesis mu_min = mu(Q1) on every curve"
        )
    if not (1 <= rank_q1 <= rank_e):
        raise ValueError("rank(Q1) must lie between 1 and rank(E)")
    value = line_oracle(det_q1)
    return ReductionResult(
        epsilon=value / rank_q1,
        oracle_value=value,
        floor=Fraction(1, rank_e),
        floor_holds=value >= 1,
    )
