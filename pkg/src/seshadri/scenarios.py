"""Named scenario registry, declarative TOML input, and the run pipeline.

Each built-in scenario packages one worked computation: the ambient space,
a bundle presentation, the declared positivity facts, witness curves, the
target level, and the expected result it is checked against.  Custom
scenarios come from TOML files with the same fields; rationals are written
as integers or "p/q" strings (floats are rejected).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping, Optional, Sequence, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import docio, oracle
from .ambient import (
    AmbientSpace,
    CurveClassForm,
    default_probes,
    irreducible_class_cone,
    mult_upper_bound_form,
    plane_with_marked_points,
)
from .bundle import (
    IDEAL_EXTENSION,
    BundlePresentation,
    detect_non_nef_witness,
    restriction_model,
    twist,
)
from .certify import (
    LINE_ORACLES,
    ExplicitCurve,
    FailureReport,
    SeshadriCertificate,
    additivity_lower_bound,
    equivariant_line_bound,
    semistable_reduction,
    seshadri_lower_bound,
    seshadri_upper_witness,
    small_seshadri_construction,
)
from .forms import as_fraction, format_rat, rat_to_doc
from .replay import ReplayReport, replay_document


class InputError(ValueError):
    """Bad user input: unknown scenario, malformed file, invalid parameter."""


@dataclass
class ScenarioResult:
    id: str
    kind: str
    ok: bool
    passed: bool
    expected_checked: bool
    summary: str
    doc: dict


# ---------------------------------------------------------------------------
# Per-kind configurations and runners


@dataclass(frozen=True)
class ConeConfig:
    id: str
    space: AmbientSpace
    bundle: BundlePresentation
    curve: Optional[CurveClassForm]
    witnesses: tuple[ExplicitCurve, ...]
    level: Fraction
    expected_lower: Optional[Fraction] = None
    expected_upper: Optional[Fraction] = None


def _run_cone(cfg: ConeConfig, level: Optional[Fraction]) -> ScenarioResult:
    requested = cfg.level if level is None else level
    outcome = seshadri_lower_bound(
        cfg.bundle,
        cfg.space,
        requested,
        curve=cfg.curve,
        witnesses=cfg.witnesses,
        scenario=cfg.id,
    )
    if isinstance(outcome, FailureReport):
        return ScenarioResult(
            id=cfg.id,
            kind="cone-certification",
            ok=False,
            passed=False,
            expected_checked=False,
            summary=f"certification failed at {outcome.location}: {outcome.reason}",
            doc=outcome.to_doc(),
        )
    check = requested == cfg.level and cfg.expected_lower is not None
    passed = True
    if check:
        passed = (
            outcome.lower == cfg.expected_lower
            and outcome.upper == cfg.expected_upper
        )
    upper = "?" if outcome.upper is None else format_rat(outcome.upper)
    return ScenarioResult(
        id=cfg.id,
        kind="cone-certification",
        ok=True,
        passed=passed,
        expected_checked=check,
        summary=(
            f"certified level {format_rat(outcome.lower)}; "
            f"interval [{format_rat(outcome.lower)}, {upper}]"
        ),
        doc=outcome.to_doc(),
    )


@dataclass(frozen=True)
class AdditivityConfig:
    id: str
    space: AmbientSpace
    bundle: Optional[BundlePresentation]
    bundle_note: str
    k: int
    min_k: int
    nef_part: Fraction = Fraction(0)
    line_part: Fraction = Fraction(1)
    expected_lower: Fraction = Fraction(1)


def _run_additivity(cfg: AdditivityConfig, level: Optional[Fraction]) -> ScenarioResult:
    if level is not None:
        raise InputError(f"{cfg.id}: --level does not apply to additivity scenarios")
    if cfg.k < cfg.min_k:
        raise InputError(
            f"{cfg.id}: twist k={cfg.k} is below the smallest ample twist {cfg.min_k}"
        )
    lower = additivity_lower_bound(
        cfg.nef_part, cfg.line_part, nef_declared=True, line_ample_gg_declared=True
    )
    doc = {
        "format": docio.FORMAT,
        "kind": "additivity",
        "scenario": cfg.id,
        "ambient": docio.ambient_to_doc(cfg.space),
        "bundle": None if cfg.bundle is None else docio.bundle_to_doc(cfg.bundle),
        "bundle_note": cfg.bundle_note,
        "twist_k": cfg.k,
        "flags": {"nef": True, "line_ample_gg": True},
        "nef_part": rat_to_doc(cfg.nef_part),
        "line_part": rat_to_doc(cfg.line_part),
        "lower": rat_to_doc(lower),
        "interval": {"lower": rat_to_doc(lower), "upper": None, "exact": False},
    }
    passed = lower == cfg.expected_lower
    return ScenarioResult(
        id=cfg.id,
        kind="additivity",
        ok=True,
        passed=passed,
        expected_checked=True,
        summary=f"lower bound {format_rat(lower)} for twist k={cfg.k}",
        doc=doc,
    )


@dataclass(frozen=True)
class EquivariantConfig:
    id: str
    space: AmbientSpace
    bundle: BundlePresentation
    expected_exact: Optional[Fraction] = None


def _run_equivariant(cfg: EquivariantConfig, level: Optional[Fraction]) -> ScenarioResult:
    if level is not None:
        raise InputError(f"{cfg.id}: --level does not apply to equivariant scenarios")
    result = equivariant_line_bound(cfg.bundle)
    doc = {
        "format": docio.FORMAT,
        "kind": "equivariant",
        "scenario": cfg.id,
        "ambient": docio.ambient_to_doc(cfg.space),
        "line_families": [list(f) for f in cfg.bundle.line_families],
        "uniform": cfg.bundle.uniform_splitting,
        "family_mins": list(result.family_mins),
        "bound": rat_to_doc(result.bound),
        "exact": result.exact,
        "interval": {
            "lower": rat_to_doc(result.bound),
            "upper": rat_to_doc(result.bound) if result.exact else None,
            "exact": result.exact,
        },
    }
    passed = True
    check = cfg.expected_exact is not None
    if check:
        passed = result.exact and result.bound == cfg.expected_exact
    word = "exactly" if result.exact else "at least"
    return ScenarioResult(
        id=cfg.id,
        kind="equivariant",
        ok=True,
        passed=passed,
        expected_checked=check,
        summary=f"Seshadri constant {word} {format_rat(result.bound)} at every point",
        doc=doc,
    )


@dataclass(frozen=True)
class ConstructionConfig:
    id: str
    delta: Fraction
    r: Optional[int] = None


def _run_construction(cfg: ConstructionConfig, level: Optional[Fraction]) -> ScenarioResult:
    if level is not None:
        raise InputError(f"{cfg.id}: --level does not apply to the construction scenario")
    result = small_seshadri_construction(cfg.delta, cfg.r)
    doc = {
        "format": docio.FORMAT,
        "kind": "construction",
        "scenario": cfg.id,
        "delta": rat_to_doc(result.delta),
        "r": result.r,
        "upper": rat_to_doc(result.upper),
        "valid": result.valid,
        "interval": {"lower": None, "upper": rat_to_doc(result.upper), "exact": False},
    }
    return ScenarioResult(
        id=cfg.id,
        kind="construction",
        ok=result.valid,
        passed=result.valid,
        expected_checked=True,
        summary=(
            f"rank {result.r} gives upper bound {format_rat(result.upper)} "
            f"{'<' if result.valid else '>='} delta = {format_rat(result.delta)}"
        ),
        doc=doc,
    )


@dataclass(frozen=True)
class ReductionConfig:
    id: str
    space: AmbientSpace
    det_q1: tuple[int, ...]
    rank_q1: int
    rank_e: int
    oracle_name: str
    expected_epsilon: Optional[Fraction] = None


def _run_reduction(cfg: ReductionConfig, level: Optional[Fraction]) -> ScenarioResult:
    if level is not None:
        raise InputError(f"{cfg.id}: --level does not apply to the reduction scenario")
    line_oracle = LINE_ORACLES.get(cfg.oracle_name)
    if line_oracle is None:
        raise InputError(f"{cfg.id}: unknown line-bundle oracle {cfg.oracle_name!r}")
    det = cfg.space.divisor(*cfg.det_q1)
    result = semistable_reduction(
        cfg.rank_e, det, cfg.rank_q1, line_oracle, hypothesis_declared=True
    )
    doc = {
        "format": docio.FORMAT,
        "kind": "reduction",
        "scenario": cfg.id,
        "ambient": docio.ambient_to_doc(cfg.space),
        "det_q1": list(cfg.det_q1),
        "rank_q1": cfg.rank_q1,
        "rank_e": cfg.rank_e,
        "oracle": cfg.oracle_name,
        "hypothesis_declared": True,
        "oracle_value": rat_to_doc(result.oracle_value),
        "epsilon": rat_to_doc(result.epsilon),
        "floor": rat_to_doc(result.floor),
        "floor_holds": result.floor_holds,
        "interval": {
            "lower": rat_to_doc(result.epsilon),
            "upper": rat_to_doc(result.epsilon),
            "exact": True,
        },
    }
    check = cfg.expected_epsilon is not None
    passed = True
    if check:
        passed = result.epsilon == cfg.expected_epsilon and result.floor_holds
    return ScenarioResult(
        id=cfg.id,
        kind="reduction",
        ok=True,
        passed=passed,
        expected_checked=check,
        summary=(
            f"epsilon = {format_rat(result.epsilon)} exactly; "
            f"floor 1/rank(E) = {format_rat(result.floor)}"
        ),
        doc=doc,
    )


@dataclass(frozen=True)
class NonNefConfig:
    id: str
    space: AmbientSpace
    bundle: BundlePresentation
    curve: CurveClassForm
    label: str
    values: tuple[tuple[str, int], ...]
    expected_min_stage: Optional[int] = None


def _run_non_nef(cfg: NonNefConfig, level: Optional[Fraction]) -> ScenarioResult:
    if level is not None:
        raise InputError(f"{cfg.id}: --level does not apply to nefness detection")
    values = dict(cfg.values)
    stages = restriction_model(cfg.bundle, cfg.curve).at(values)
    min_stage = detect_non_nef_witness(cfg.bundle, cfg.curve, values)
    doc = {
        "format": docio.FORMAT,
        "kind": "non-nef-witness",
        "scenario": cfg.id,
        "ambient": docio.ambient_to_doc(cfg.space),
        "bundle": docio.bundle_to_doc(cfg.bundle),
        "curve": docio.curve_to_doc(cfg.curve),
        "label": cfg.label,
        "values": [[name, value] for name, value in cfg.values],
        "stages": list(stages),
        "min_stage": min_stage,
        "not_nef": min_stage < 0,
    }
    check = cfg.expected_min_stage is not None
    passed = True
    if check:
        passed = min_stage == cfg.expected_min_stage
    verdict = "not nef" if min_stage < 0 else "no obstruction found"
    return ScenarioResult(
        id=cfg.id,
        kind="non-nef-witness",
        ok=True,
        passed=passed,
        expected_checked=check,
        summary=f"quotient degree {min_stage} on the {cfg.label}: {verdict}",
        doc=doc,
    )


_RUNNERS: Mapping[str, Callable] = {
    "cone-certification": _run_cone,
    "additivity": _run_additivity,
    "equivariant": _run_equivariant,
    "construction": _run_construction,
    "reduction": _run_reduction,
    "non-nef-witness": _run_non_nef,
}

Config = Union[
    ConeConfig,
    AdditivityConfig,
    EquivariantConfig,
    ConstructionConfig,
    ReductionConfig,
    NonNefConfig,
]


def _kind_of(cfg: Config) -> str:
    return {
        ConeConfig: "cone-certification",
        AdditivityConfig: "additivity",
        EquivariantConfig: "equivariant",
        ConstructionConfig: "construction",
        ReductionConfig: "reduction",
        NonNefConfig: "non-nef-witness",
    }[type(cfg)]


# ---------------------------------------------------------------------------
# Built-in registry


HIRZEBRUCH_CASES = {
    1: (1, (2, 2), (1, 3)),
    2: (0, (2, 0), (1, 3)),
    3: (1, (2, 1), (1, 4)),
    4: (2, (2, 4), (1, 4)),
}


def _hirzebruch_config(case: int, params: Mapping) -> ConeConfig:
    e, sub, quot = HIRZEBRUCH_CASES[case]
    space = AmbientSpace.hirzebruch(e)
    bundle = BundlePresentation.extension(
        space.divisor(*sub), space.divisor(*quot), ample_declared=True
    )
    fiber = ExplicitCurve(
        label="f",
        values=(("a", 0), ("b", 1)),
        mult=1,
        locus="every point (a fiber passes through each point)",
    )
    return ConeConfig(
        id=f"hirzebruch-case-{case}",
        space=space,
        bundle=bundle,
        curve=None,
        witnesses=(fiber,),
        level=Fraction(1),
        expected_lower=Fraction(1),
        expected_upper=Fraction(1),
    )


def _five_points_bundle(k: int) -> tuple[AmbientSpace, BundlePresentation, CurveClassForm]:
    space = AmbientSpace.plane()
    base = BundlePresentation.ideal_extension(
        space.zero_class(), space.zero_class(), 5
    )
    return space, twist(base, space.divisor(k)), plane_with_marked_points(5)


def _ex39_e3_config(params: Mapping) -> ConeConfig:
    space, bundle, curve = _five_points_bundle(3)
    conic = ExplicitCurve(
        label="conic",
        values=(("d", 2), ("m1", 1), ("m2", 1), ("m3", 1), ("m4", 1), ("m5", 1)),
        mult=1,
        locus="points of the conic through the five marked points",
        excluded_from_cone=True,
    )
    line = ExplicitCurve(
        label="line-pair",
        values=(("d", 1), ("m1", 1), ("m2", 1), ("m3", 0), ("m4", 0), ("m5", 0)),
        mult=1,
        locus="the ten lines through two of the marked points",
    )
    return ConeConfig(
        id="ex-3.9-E3",
        space=space,
        bundle=bundle,
        curve=curve,
        witnesses=(conic, line),
        level=Fraction(1),
        expected_lower=Fraction(1),
        expected_upper=Fraction(1),
    )


def _ex39_e2_config(params: Mapping) -> NonNefConfig:
    space, bundle, curve = _five_points_bundle(2)
    return NonNefConfig(
        id="ex-3.9-E2-not-nef",
        space=space,
        bundle=bundle,
        curve=curve,
        label="conic",
        values=(("d", 2), ("m1", 1), ("m2", 1), ("m3", 1), ("m4", 1), ("m5", 1)),
        expected_min_stage=-1,
    )


def _additivity_config(
    id: str,
    space: AmbientSpace,
    bundle: Optional[BundlePresentation],
    note: str,
    twist_offset: int = 0,
) -> Callable[[Mapping], AdditivityConfig]:
    # ``bundle`` is the presentation at twist ``twist_offset``; the scenario
    # runs the k-th twist, so the presentation gets k - twist_offset more.
    def build(params: Mapping) -> AdditivityConfig:
        k = int(params.get("k", 2))
        built = bundle
        if built is not None:
            built = twist(built, (k - twist_offset) * space.divisor(1))
        return AdditivityConfig(
            id=id, space=space, bundle=built, bundle_note=note, k=k, min_k=2
        )

    return build


def _tangent_config(params: Mapping) -> EquivariantConfig:
    n = int(params.get("n", 2))
    if n < 2:
        raise InputError("tangent-Pn: --n must be at least 2")
    if n > 12:
        raise InputError("tangent-Pn: --n above 12 is not tabulated")
    families = tuple(
        (2,) + (1,) * (n - 1) for _ in range(n * (n + 1) // 2)
    )
    bundle = BundlePresentation.equivariant(
        families, uniform_splitting=True, ample_declared=True
    )
    space = AmbientSpace.plane() if n == 2 else AmbientSpace.projective_space(n)
    return EquivariantConfig(
        id="tangent-Pn",
        space=space,
        bundle=bundle,
        expected_exact=Fraction(1),
    )


def _construction_config(params: Mapping) -> ConstructionConfig:
    delta = as_fraction(params.get("delta", Fraction(1, 2)))
    r = params.get("r")
    return ConstructionConfig(
        id="thm-4.1-small", delta=delta, r=None if r is None else int(r)
    )


def _reduction_config(params: Mapping) -> ReductionConfig:
    return ReductionConfig(
        id="thm-4.2-reduction",
        space=AmbientSpace.plane(),
        det_q1=(3,),
        rank_q1=2,
        rank_e=2,
        oracle_name="p2-lines",
        expected_epsilon=Fraction(3, 2),
    )


@dataclass(frozen=True)
class ScenarioDefinition:
    id: str
    kind: str
    anchor: str
    expected: str
    params: tuple[str, ...]
    build: Callable[[Mapping], Config]


def _definitions() -> dict[str, ScenarioDefinition]:
    plane = AmbientSpace.plane()
    p3 = AmbientSpace.projective_space(3)
    one_point = BundlePresentation.ideal_extension(plane.zero_class(), plane.zero_class(), 1)
    four_points = BundlePresentation.ideal_extension(plane.zero_class(), plane.divisor(2), 4)
    defs = [
        ScenarioDefinition(
            id="ex-3.4",
            kind="additivity",
            anchor="plane bundle from the ideal sheaf of one point",
            expected="lower bound 1 for twists k >= 2",
            params=("k",),
            build=_additivity_config(
                "ex-3.4",
                plane,
                one_point,
                "extension of the ideal sheaf of one point by the trivial bundle; "
                "first twist nef (declared)",
            ),
        ),
        ScenarioDefinition(
            id="ex-3.5",
            kind="additivity",
            anchor="stable plane bundle with globally generated first twist",
            expected="lower bound 1 for twists k >= 2",
            params=("k",),
            build=_additivity_config(
                "ex-3.5",
                plane,
                None,
                "stable rank-2 plane bundle presented by four sections; "
                "first twist globally generated, hence nef (declared)",
            ),
        ),
        ScenarioDefinition(
            id="ex-3.6",
            kind="additivity",
            anchor="plane bundle through four general points",
            expected="lower bound 1 for twists k >= 2",
            params=("k",),
            build=_additivity_config(
                "ex-3.6",
                plane,
                four_points,
                "first twist is an extension of the twisted ideal sheaf of four "
                "general points; globally generated, hence nef (declared)",
                twist_offset=1,
            ),
        ),
        ScenarioDefinition(
            id="ex-3.7-null-correlation",
            kind="additivity",
            anchor="null correlation bundle on P^3",
            expected="lower bound 1 for twists k >= 2",
            params=("k",),
            build=_additivity_config(
                "ex-3.7-null-correlation",
                p3,
                None,
                "null correlation bundle on P^3; first twist globally generated, "
                "hence nef (declared)",
            ),
        ),
        ScenarioDefinition(
            id="ex-3.9-E2-not-nef",
            kind="non-nef-witness",
            anchor="five general plane points, second twist",
            expected="quotient degree -1 on the conic",
            params=(),
            build=_ex39_e2_config,
        ),
        ScenarioDefinition(
            id="ex-3.9-E3",
            kind="cone-certification",
            anchor="five general plane points, third twist",
            expected="interval [1, 1] at conic points; lower 1 everywhere",
            params=(),
            build=_ex39_e3_config,
        ),
        ScenarioDefinition(
            id="tangent-Pn",
            kind="equivariant",
            anchor="tangent bundle of P^n on torus-invariant lines",
            expected="exactly 1",
            params=("n",),
            build=_tangent_config,
        ),
        ScenarioDefinition(
            id="thm-4.1-small",
            kind="construction",
            anchor="ample bundles with arbitrarily small Seshadri constant",
            expected="upper bound 1/r < delta",
            params=("delta", "r"),
            build=_construction_config,
        ),
        ScenarioDefinition(
            id="thm-4.2-reduction",
            kind="reduction",
            anchor="reduction to the determinant of the minimal HN quotient",
            expected="exactly 3/2; floor 1/2",
            params=(),
            build=_reduction_config,
        ),
    ]
    for case in (1, 2, 3, 4):
        e, sub, quot = HIRZEBRUCH_CASES[case]
        defs.append(
            ScenarioDefinition(
                id=f"hirzebruch-case-{case}",
                kind="cone-certification",
                anchor=f"indecomposable ample rank-2 bundle on F_{e} (case {case})",
                expected="interval [1, 1]",
                params=(),
                build=lambda params, case=case: _hirzebruch_config(case, params),
            )
        )
    return {d.id: d for d in defs}


REGISTRY: dict[str, ScenarioDefinition] = _definitions()


def list_scenarios() -> list[tuple[str, str, str]]:
    """Rows (id, anchor, expected) for the registry table, sorted by id."""
    return [(d.id, d.anchor, d.expected) for d in sorted(REGISTRY.values(), key=lambda d: d.id)]


# ---------------------------------------------------------------------------
# TOML input


def _reject_floats(value, path: str) -> None:
    if isinstance(value, float):
        raise InputError(
            f"{path}: floats are not allowed; write exact rationals as 'p/q' strings"
        )
    if isinstance(value, dict):
        for k, v in value.items():
            _reject_floats(v, f"{path}.{k}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _reject_floats(v, f"{path}[{i}]")


def _toml_fraction(table: Mapping, key: str, path: str, default=None) -> Optional[Fraction]:
    if key not in table:
        return default
    try:
        return as_fraction(table[key])
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}.{key}: {exc}") from exc


def _toml_ambient(table: Mapping, path: str) -> AmbientSpace:
    kind = table.get("type")
    if kind == "hirzebruch":
        return AmbientSpace.hirzebruch(int(table.get("e", 0)))
    if kind == "plane":
        return AmbientSpace.plane()
    if kind == "space":
        return AmbientSpace.projective_space(int(table.get("n", 3)))
    raise InputError(f"{path}.type: expected 'hirzebruch', 'plane' or 'space'")


def _toml_bundle(table: Mapping, space: AmbientSpace, path: str) -> BundlePresentation:
    presentation = table.get("presentation")
    flags = dict(
        ample_declared=bool(table.get("ample", False)),
        semistable_delta_zero=bool(table.get("semistable_delta_zero", False)),
        uniform_splitting=bool(table.get("uniform_splitting", False)),
    )

    def cls(coeffs, name):
        if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
            raise InputError(f"{path}.{name}: expected a list of integers")
        return space.divisor(*coeffs)

    try:
        if presentation == "split":
            E = BundlePresentation.split(
                [cls(c, "classes") for c in table["classes"]], **flags
            )
        elif presentation == "extension":
            E = BundlePresentation.extension(
                cls(table["sub"], "sub"), cls(table["quot"], "quot"), **flags
            )
        elif presentation == "ideal-extension":
            E = BundlePresentation.ideal_extension(
                cls(table["sub"], "sub"),
                cls(table["quot"], "quot"),
                int(table["marked_points"]),
                **flags,
            )
        elif presentation == "on-curve-split":
            E = BundlePresentation.on_curve(table["degrees"], **flags)
        elif presentation == "equivariant-lines":
            E = BundlePresentation.equivariant(table["line_families"], **flags)
        else:
            raise InputError(
                f"{path}.presentation: unknown presentation {presentation!r}"
            )
    except KeyError as exc:
        raise InputError(f"{path}: missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if "twist" in table and E.space is not None:
        E = twist(E, cls(table["twist"], "twist"))
    return E


def _toml_witnesses(tables, path: str) -> tuple[ExplicitCurve, ...]:
    witnesses = []
    for i, table in enumerate(tables):
        where = f"{path}[{i}]"
        values = table.get("values")
        if not isinstance(values, dict):
            raise InputError(f"{where}.values: expected a table of integer values")
        witnesses.append(
            ExplicitCurve(
                label=str(table.get("label", f"witness-{i}")),
                values=tuple((str(k), int(v)) for k, v in values.items()),
                mult=int(table.get("mult", 1)),
                locus=str(table.get("locus", "")),
                excluded_from_cone=bool(table.get("excluded", False)),
            )
        )
    return tuple(witnesses)


def load_scenario_file(path: Union[str, Path]) -> Config:
    """Parse a TOML scenario description into a runnable configuration."""
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: TOML parse error: {exc}") from exc
    _reject_floats(data, str(path))
    scenario_id = str(data.get("id", path.stem))
    kind = data.get("kind")
    expected = data.get("expected", {})
    if kind == "cone-certification":
        space = _toml_ambient(data.get("ambient", {}), "ambient")
        bundle = _toml_bundle(data.get("bundle", {}), space, "bundle")
        curve = None
        if bundle.kind == IDEAL_EXTENSION and space.kind == "plane":
            curve = plane_with_marked_points(
                len(bundle.marked_points),
                int(data.get("container_degree", 2)),
            )
        return ConeConfig(
            id=scenario_id,
            space=space,
            bundle=bundle,
            curve=curve,
            witnesses=_toml_witnesses(data.get("witnesses", []), "witnesses"),
            level=_toml_fraction(data, "level", "$", Fraction(1)),
            expected_lower=_toml_fraction(expected, "lower", "expected"),
            expected_upper=_toml_fraction(expected, "upper", "expected"),
        )
    if kind == "additivity":
        space = _toml_ambient(data.get("ambient", {}), "ambient")
        return AdditivityConfig(
            id=scenario_id,
            space=space,
            bundle=None,
            bundle_note=str(data.get("note", "")),
            k=int(data.get("k", 2)),
            min_k=int(data.get("min_k", 2)),
            nef_part=_toml_fraction(data, "nef_part", "$", Fraction(0)),
            line_part=_toml_fraction(data, "line_part", "$", Fraction(1)),
            expected_lower=_toml_fraction(expected, "lower", "expected", Fraction(1)),
        )
    if kind == "equivariant":
        space = _toml_ambient(data.get("ambient", {}), "ambient")
        bundle = _toml_bundle(data.get("bundle", {}), space, "bundle")
        return EquivariantConfig(
            id=scenario_id,
            space=space,
            bundle=bundle,
            expected_exact=_toml_fraction(expected, "exact", "expected"),
        )
    if kind == "construction":
        r = data.get("r")
        return ConstructionConfig(
            id=scenario_id,
            delta=_toml_fraction(data, "delta", "$", Fraction(1, 2)),
            r=None if r is None else int(r),
        )
    if kind == "reduction":
        space = _toml_ambient(data.get("ambient", {}), "ambient")
        det = data.get("det_q1")
        if not isinstance(det, list):
            raise InputError("det_q1: expected a list of integers")
        return ReductionConfig(
            id=scenario_id,
            space=space,
            det_q1=tuple(int(c) for c in det),
            rank_q1=int(data.get("rank_q1", 1)),
            rank_e=int(data.get("rank_e", 1)),
            oracle_name=str(data.get("oracle", "p2-lines")),
            expected_epsilon=_toml_fraction(expected, "epsilon", "expected"),
        )
    raise InputError(f"{path}: unknown or missing scenario kind {kind!r}")


# ---------------------------------------------------------------------------
# Run / verify / oracle entry points


def build_config(target: str, params: Optional[Mapping] = None) -> Config:
    params = dict(params or {})
    definition = REGISTRY.get(target)
    if definition is not None:
        unknown = set(params) - set(definition.params)
        if unknown:
            raise InputError(
                f"{target}: parameters {sorted(unknown)} do not apply "
                f"(accepted: {list(definition.params) or 'none'})"
            )
        return definition.build(params)
    if target.endswith(".toml") or Path(target).exists():
        if params:
            raise InputError("scenario files take no extra parameters")
        return load_scenario_file(target)
    raise InputError(f"unknown scenario {target!r} (try 'seshadri list')")


def run_scenario(
    target: str,
    level: Optional[Union[int, str, Fraction]] = None,
    params: Optional[Mapping] = None,
) -> ScenarioResult:
    """Run a built-in scenario id or a TOML scenario file."""
    cfg = build_config(target, params)
    runner = _RUNNERS[_kind_of(cfg)]
    parsed_level = None if level is None else as_fraction(level)
    return runner(cfg, parsed_level)


def verify_certificate_file(path: Union[str, Path]) -> ReplayReport:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc
    return replay_document(doc)


def oracle_spec(target: str, params: Optional[Mapping] = None) -> oracle.OracleSpec:
    """Build the brute-force cross-check for a cone-certification scenario."""
    cfg = build_config(target, params)
    if not isinstance(cfg, ConeConfig):
        raise InputError(
            f"{cfg.id}: the brute-force oracle applies to cone certifications only"
        )
    space, bundle = cfg.space, cfg.bundle
    curve = cfg.curve
    if curve is None:
        from .ambient import surface_curve_form

        curve = surface_curve_form(space)
    model = restriction_model(bundle, curve)
    num_forms = [s.integer_coeffs() for s in model.stages]
    candidates: list[oracle.OracleCandidate] = []
    for witness in cfg.witnesses:
        if witness.excluded_from_cone:
            report = seshadri_upper_witness(bundle, curve, witness)
            candidates.append(
                oracle.OracleCandidate(label=witness.label, ratio=report.contribution)
            )
    if curve.mult_var is not None:
        problem = oracle.marked_plane_problem(len(curve.marked_vars), num_forms)
    else:
        bound = mult_upper_bound_form(space, default_probes(space), curve)
        if not bound.forms:
            raise InputError(f"{cfg.id}: no applicable probe; oracle ratio undefined")
        den_forms = [f.integer_coeffs() for _, f in bound.forms]
        problem = oracle.hirzebruch_problem(space.e, num_forms, den_forms)
        rays = sorted(
            irreducible_class_cone(space).special, key=lambda r: not r.pencil
        )
        for ray in rays:
            stages = model.at(dict(zip(curve.cone.variables, ray.values)))
            value = Fraction(min(stages))
            if bundle.ample_declared and ray.smooth and ray.rational:
                value = max(value, Fraction(1))
            candidates.append(
                oracle.OracleCandidate(label=f"ray {ray.name}", ratio=value)
            )
    return oracle.OracleSpec(
        scenario=cfg.id, problem=problem, candidates=tuple(candidates)
    )
