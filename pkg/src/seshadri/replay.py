"""Independent replay of certificate documents.

Replay re-derives everything that can be recomputed without search: the
symbolic restriction forms, the multiplicity bound, the subcone split
pattern, each Farkas identity (multipliers recombine to the target form,
exactly), ray membership, special-ray slope arithmetic, witness
contributions, and the reported interval.  It does not re-run any search:
the multipliers are taken from the document and checked.

Declared geometric inputs (cone constraints, lattice floors, probe
pencils, the excluded-curve list) are the scenario's facts; replay checks
the reasoning built on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cones, docio
from .ambient import default_probes, irreducible_class_cone
from .bundle import restriction_model
from .certify import (
    LINE_ORACLES,
    MU_MIN_QUOTIENT_RULE,
    MU_MIN_SPLIT_RULE,
    additivity_lower_bound,
    equivariant_line_bound,
    exact_mu_min,
    small_seshadri_construction,
)
from .forms import LinForm, rat_from_doc


@dataclass
class ReplayReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, identity: str, detail: str) -> None:
        self.failures.append(f"{identity}: {detail}")


def replay_document(doc) -> ReplayReport:
    """Verify a certificate document; collects every failing identity."""
    report = ReplayReport()
    if not isinstance(doc, dict) or doc.get("format") != docio.FORMAT:
        report.fail("format", f"not a {docio.FORMAT} document")
        return report
    kind = doc.get("kind")
    handlers = {
        "cone-certification": _replay_cone,
        "additivity": _replay_additivity,
        "equivariant": _replay_equivariant,
        "construction": _replay_construction,
        "reduction": _replay_reduction,
        "non-nef-witness": _replay_non_nef,
    }
    handler = handlers.get(kind)
    if handler is None:
        report.fail("kind", f"unknown certificate kind {kind!r}")
        return report
    try:
        handler(doc, report)
    except (KeyError, TypeError, ValueError) as exc:
        report.fail("structure", f"malformed document: {exc}")
    return report


def _forms_equal(a: LinForm, b: LinForm) -> bool:
    return a.variables == b.variables and a.coeffs == b.coeffs


def _replay_cone(doc, report: ReplayReport) -> None:
    level = rat_from_doc(doc["level"])
    space = docio.ambient_from_doc(doc["ambient"])
    bundle = docio.bundle_from_doc(doc["bundle"], space)
    curve = docio.curve_from_doc(doc["curve"], space)
    variables = curve.cone.variables
    geometry = curve.cone.geometry()

    # Restriction forms must match the recorded numerator of the target.
    model = restriction_model(bundle, curve)
    plus_docs = doc["target"]["plus"]
    if len(plus_docs) != len(model.stages):
        report.fail("target.plus", "stage count differs from the presentation")
        return
    plus = []
    for i, coeffs in enumerate(plus_docs):
        form = docio.form_from_doc(variables, coeffs)
        if not _forms_equal(form, model.stages[i]):
            report.fail(f"target.plus[{i}]", "does not match the restriction model")
        plus.append(form)

    # The multiplicity bound: either the explicit variable, or probe
    # pairings that must be >= 1 at integer classes (checked on the rays
    # against a declared lattice floor; rays suffice on a pointed cone).
    minus = []
    mode = doc["target"]["mult_mode"]
    minus_docs = doc["target"]["minus"]
    if mode == "variable":
        if curve.mult_var is None or len(minus_docs) != 1:
            report.fail("target.minus", "explicit-multiplicity mode needs the cone variable")
            return
        form = docio.form_from_doc(variables, minus_docs[0]["coeffs"])
        if not _forms_equal(form, curve.mult_form()):
            report.fail("target.minus[0]", "is not the multiplicity variable")
        minus.append((minus_docs[0]["name"], form))
    elif mode == "probe-min":
        probes = {p.name: p for p in default_probes(space)}
        rays = curve.cone.rays
        floors = curve.cone.lattice_floors
        for j, entry in enumerate(minus_docs):
            name = entry["name"]
            form = docio.form_from_doc(variables, entry["coeffs"])
            probe = probes.get(name)
            if probe is None:
                report.fail(f"target.minus[{j}]", f"unknown probe {name!r}")
                continue
            if not _forms_equal(form, curve.class_pairing(probe.cls)):
                report.fail(f"target.minus[{j}]", "does not match the probe pairing")
            applicable = any(
                all((form - floor).evaluate(ray) >= 0 for ray in rays)
                for floor in floors
            )
            if not applicable:
                report.fail(f"target.minus[{j}]", f"probe {name} not >= 1 on the cone")
            minus.append((name, form))
    else:
        report.fail("target.mult_mode", f"unknown mode {mode!r}")
        return

    # Base rays must lie in the cone.
    for ray in curve.cone.rays:
        if not geometry.contains(ray):
            report.fail("cone.rays", f"ray {ray} violates the constraints")

    # Subcones must follow the deterministic split pattern of the minus
    # forms: dropping or reordering one is detected here.
    expected_labels = (
        ["full"] if not minus else [f"mult:{name}" for name, _ in minus]
    )
    subcone_docs = doc["subcones"]
    if [sc["label"] for sc in subcone_docs] != expected_labels:
        report.fail(
            "subcones",
            f"labels {[sc['label'] for sc in subcone_docs]} do not cover the "
            f"expected decomposition {expected_labels}",
        )
        return
    for sc_doc in subcone_docs:
        label = sc_doc["label"]
        if minus:
            j = expected_labels.index(label)
            name_j, form_j = minus[j]
            expected_added = [
                cones.Constraint(f"split:{name_j}<={name_k}", form_k - form_j)
                for k, (name_k, form_k) in enumerate(minus)
                if k != j
            ]
            active = form_j.scale(level)
        else:
            expected_added = []
            active = None
        added = [
            docio.constraint_from_doc(variables, c) for c in sc_doc["added"]
        ]
        if [(c.label, c.form.coeffs) for c in added] != [
            (c.label, c.form.coeffs) for c in expected_added
        ]:
            report.fail(f"subcone[{label}].added", "split constraints were altered")
            continue
        sub = geometry.with_constraints(added)
        by_label = {c.label: c.form for c in sub.constraints}
        target_docs = sc_doc["targets"]
        if [t["plus_index"] for t in target_docs] != list(range(len(plus))):
            report.fail(f"subcone[{label}].targets", "must certify every stage form")
            continue
        for t_doc in target_docs:
            i = t_doc["plus_index"]
            identity = f"subcone[{label}].target[{i}]"
            target = docio.form_from_doc(variables, t_doc["coeffs"])
            expected = plus[i] if active is None else plus[i] - active
            if not _forms_equal(target, expected):
                report.fail(identity, "target form does not match plus - level*minus")
                continue
            combination = LinForm.zero(variables)
            valid = True
            for entry in t_doc["multipliers"]:
                value = rat_from_doc(entry["value"])
                constraint_form = by_label.get(entry["constraint"])
                if constraint_form is None:
                    report.fail(identity, f"unknown constraint {entry['constraint']!r}")
                    valid = False
                    break
                if value < 0:
                    report.fail(identity, f"negative multiplier on {entry['constraint']}")
                    valid = False
                    break
                combination = combination + constraint_form.scale(value)
            if valid and not _forms_equal(combination, target):
                report.fail(
                    identity,
                    f"multipliers recombine to {combination}, not {target}",
                )

    # Every special ray of the ambient needs a report meeting the level.
    expected_rays = {r.name: r for r in irreducible_class_cone(space).special}
    seen = set()
    for r_doc in doc["special_rays"]:
        name = r_doc["name"]
        identity = f"special_ray[{name}]"
        seen.add(name)
        ray = expected_rays.get(name)
        if ray is None:
            report.fail(identity, "not a special ray of this ambient")
            continue
        if tuple(r_doc["values"]) != ray.values:
            report.fail(identity, "ray class values were altered")
            continue
        stages = model.at(dict(zip(variables, ray.values)))
        if tuple(r_doc["stages"]) != stages:
            report.fail(identity, f"stages recompute to {stages}")
            continue
        extension_bound = rat_from_doc(r_doc["extension_bound"])
        if extension_bound != Fraction(min(stages)):
            report.fail(identity, "extension bound is not the minimal stage")
        bound = rat_from_doc(r_doc["bound"])
        if r_doc["ample_upgraded"]:
            if not bundle.ample_declared:
                report.fail(identity, "ample upgrade used without the declared flag")
            if not (ray.smooth and ray.rational):
                report.fail(identity, "ample upgrade needs a smooth rational ray")
            if bound != max(extension_bound, Fraction(1)):
                report.fail(identity, "upgraded bound is not max(extension bound, 1)")
        elif bound != extension_bound:
            report.fail(identity, "bound differs from the extension bound")
        if r_doc["mult"] != 1:
            report.fail(identity, "special rays have multiplicity 1")
        if bound < level:
            report.fail(identity, f"bound {bound} is below the level {level}")
    missing = set(expected_rays) - seen
    if missing:
        report.fail("special_rays", f"missing reports for {sorted(missing)}")

    # Witnesses: recompute contributions; all must dominate the level.
    interval = doc["interval"]
    lower = rat_from_doc(interval["lower"])
    contributions = []
    for w_doc in doc["witnesses"]:
        identity = f"witness[{w_doc['label']}]"
        values = {name: value for name, value in w_doc["values"]}
        stages = model.at(values)
        if tuple(w_doc["stages"]) != stages:
            report.fail(identity, f"stages recompute to {stages}")
            continue
        try:
            mu_min, rule = exact_mu_min(bundle, stages)
        except ValueError as exc:
            report.fail(identity, str(exc))
            continue
        if w_doc["mu_min_rule"] != rule or rat_from_doc(w_doc["mu_min"]) != mu_min:
            report.fail(identity, "mu_min does not recompute")
            continue
        mult = w_doc["mult"]
        if not isinstance(mult, int) or mult < 1:
            report.fail(identity, "multiplicity must be a positive integer")
            continue
        contribution = rat_from_doc(w_doc["contribution"])
        if contribution != mu_min / mult:
            report.fail(identity, "contribution is not mu_min / mult")
            continue
        if contribution < lower:
            report.fail(identity, "contribution falls below the certified lower bound")
        contributions.append(contribution)

    if lower != level:
        report.fail("interval.lower", "lower bound differs from the certified level")
    upper_doc = interval["upper"]
    if contributions:
        upper = min(contributions)
        if upper_doc is None or rat_from_doc(upper_doc) != upper:
            report.fail("interval.upper", f"upper bound recomputes to {upper}")
        if interval["exact"] != (upper == lower):
            report.fail("interval.exact", "exactness flag is inconsistent")
    else:
        if upper_doc is not None:
            report.fail("interval.upper", "upper bound recorded without witnesses")
        if interval["exact"]:
            report.fail("interval.exact", "exactness requires a witness")


def _replay_additivity(doc, report: ReplayReport) -> None:
    flags = doc["flags"]
    nef_part = rat_from_doc(doc["nef_part"])
    line_part = rat_from_doc(doc["line_part"])
    try:
        lower = additivity_lower_bound(
            nef_part,
            line_part,
            nef_declared=bool(flags["nef"]),
            line_ample_gg_declared=bool(flags["line_ample_gg"]),
        )
    except ValueError as exc:
        report.fail("additivity", str(exc))
        return
    if rat_from_doc(doc["lower"]) != lower:
        report.fail("additivity.lower", f"recomputes to {lower}")


def _replay_equivariant(doc, report: ReplayReport) -> None:
    from .bundle import BundlePresentation

    E = BundlePresentation.equivariant(
        doc["line_families"], uniform_splitting=bool(doc["uniform"])
    )
    try:
        result = equivariant_line_bound(E)
    except ValueError as exc:
        report.fail("equivariant", str(exc))
        return
    if rat_from_doc(doc["bound"]) != result.bound:
        report.fail("equivariant.bound", f"recomputes to {result.bound}")
    if doc["exact"] != result.exact:
        report.fail("equivariant.exact", "exactness flag is inconsistent")
    if [int(m) for m in doc["family_mins"]] != list(result.family_mins):
        report.fail("equivariant.family_mins", "per-family minima do not recompute")


def _replay_construction(doc, report: ReplayReport) -> None:
    result = small_seshadri_construction(rat_from_doc(doc["delta"]), int(doc["r"]))
    if rat_from_doc(doc["upper"]) != result.upper:
        report.fail("construction.upper", f"recomputes to {result.upper}")
    if doc["valid"] != result.valid:
        report.fail("construction.valid", "validity flag is inconsistent")


def _replay_reduction(doc, report: ReplayReport) -> None:
    space = docio.ambient_from_doc(doc["ambient"])
    oracle = LINE_ORACLES.get(doc["oracle"])
    if oracle is None:
        report.fail("reduction.oracle", f"unknown oracle {doc['oracle']!r}")
        return
    det = space.divisor(*doc["det_q1"])
    value = oracle(det)
    if rat_from_doc(doc["oracle_value"]) != value:
        report.fail("reduction.oracle_value", f"recomputes to {value}")
    if not doc["hypothesis_declared"]:
        report.fail("reduction.hypothesis", "reduction hypothesis is not declared")
    rank_q1 = int(doc["rank_q1"])
    rank_e = int(doc["rank_e"])
    if rat_from_doc(doc["epsilon"]) != value / rank_q1:
        report.fail("reduction.epsilon", "epsilon is not oracle value / rank(Q1)")
    if rat_from_doc(doc["floor"]) != Fraction(1, rank_e):
        report.fail("reduction.floor", "floor is not 1/rank(E)")
    if doc["floor_holds"] != (value >= 1):
        report.fail("reduction.floor_holds", "floor flag is inconsistent")


def _replay_non_nef(doc, report: ReplayReport) -> None:
    space = docio.ambient_from_doc(doc["ambient"])
    bundle = docio.bundle_from_doc(doc["bundle"], space)
    curve = docio.curve_from_doc(doc["curve"], space)
    values = {name: value for name, value in doc["values"]}
    stages = restriction_model(bundle, curve).at(values)
    if tuple(doc["stages"]) != stages:
        report.fail("non-nef.stages", f"stages recompute to {stages}")
        return
    min_stage = min(stages)
    if doc["min_stage"] != min_stage:
        report.fail("non-nef.min_stage", f"recomputes to {min_stage}")
    if doc["not_nef"] != (min_stage < 0):
        report.fail("non-nef.conclusion", "nefness conclusion is inconsistent")
