"""Canonical JSON document encoding shared by certificates and their replay.

Documents use exact rationals as {"num": int, "den": int}, fixed field
order, and compact separators, so a scenario run is byte-reproducible.
"""

from __future__ import annotations

import json
from typing import Mapping

from . import cones
from .ambient import (
    HIRZEBRUCH,
    PLANE,
    SPACE,
    AmbientSpace,
    ClassCone,
    CurveClassForm,
    DivisorClass,
)
from .bundle import (
    EQUIVARIANT_LINES,
    EXTENSION,
    IDEAL_EXTENSION,
    ON_CURVE_SPLIT,
    SPLIT,
    BundlePresentation,
)
from .forms import LinForm, form_from_coeff_doc, rat_from_doc, rat_to_doc

FORMAT = "seshadri-certificate/1"


def _assert_exact(value, path="$"):
    if isinstance(value, float):
        raise ValueError(f"float at {path}; certificates are exact-rational only")
    if isinstance(value, Mapping):
        for k, v in value.items():
            _assert_exact(v, f"{path}.{k}")
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            _assert_exact(v, f"{path}[{i}]")


def canonical_json(doc: Mapping) -> bytes:
    """Serialize with stable field order; floats are rejected."""
    _assert_exact(doc)
    return (json.dumps(doc, separators=(",", ":"), allow_nan=False) + "\n").encode("ascii")


def ambient_to_doc(space: AmbientSpace) -> dict:
    if space.kind == HIRZEBRUCH:
        return {"type": "hirzebruch", "e": space.e}
    if space.kind == PLANE:
        return {"type": "plane"}
    return {"type": "space", "n": space.n}


def ambient_from_doc(doc) -> AmbientSpace:
    kind = doc.get("type")
    if kind == "hirzebruch":
        return AmbientSpace.hirzebruch(int(doc["e"]))
    if kind == "plane":
        return AmbientSpace.plane()
    if kind == "space":
        return AmbientSpace.projective_space(int(doc["n"]))
    raise ValueError(f"unknown ambient type {kind!r}")


def _cls_doc(cls: DivisorClass | None):
    return None if cls is None else list(cls.coeffs)


def bundle_to_doc(E: BundlePresentation) -> dict:
    return {
        "kind": E.kind,
        "rank": E.rank,
        "classes": [list(c.coeffs) for c in E.classes],
        "sub": _cls_doc(E.sub),
        "quot": _cls_doc(E.quot),
        "marked_points": len(E.marked_points),
        "degrees": list(E.degrees),
        "line_families": [list(f) for f in E.line_families],
        "twist": _cls_doc(E.twist_cls),
        "flags": {
            "ample": E.ample_declared,
            "semistable_delta_zero": E.semistable_delta_zero,
            "uniform_splitting": E.uniform_splitting,
        },
    }


def bundle_from_doc(doc, space: AmbientSpace | None) -> BundlePresentation:
    kind = doc["kind"]
    flags = doc.get("flags", {})
    common = dict(
        ample_declared=bool(flags.get("ample", False)),
        semistable_delta_zero=bool(flags.get("semistable_delta_zero", False)),
        uniform_splitting=bool(flags.get("uniform_splitting", False)),
    )

    def cls(coeffs):
        return DivisorClass(space, tuple(int(c) for c in coeffs))

    if kind == SPLIT:
        E = BundlePresentation.split([cls(c) for c in doc["classes"]], **common)
    elif kind == EXTENSION:
        E = BundlePresentation.extension(cls(doc["sub"]), cls(doc["quot"]), **common)
    elif kind == IDEAL_EXTENSION:
        E = BundlePresentation.ideal_extension(
            cls(doc["sub"]), cls(doc["quot"]), int(doc["marked_points"]), **common
        )
    elif kind == ON_CURVE_SPLIT:
        E = BundlePresentation.on_curve(doc["degrees"], **common)
    elif kind == EQUIVARIANT_LINES:
        E = BundlePresentation.equivariant(doc["line_families"], **common)
    else:
        raise ValueError(f"unknown bundle kind {kind!r}")
    twist_doc = doc.get("twist")
    if twist_doc is not None and E.space is not None:
        from .bundle import twist as twist_op

        E = twist_op(E, cls(twist_doc))
    return E


def constraint_to_doc(c: cones.Constraint) -> dict:
    return {"label": c.label, "coeffs": c.form.coeff_doc()}


def constraint_from_doc(variables, doc) -> cones.Constraint:
    return cones.Constraint(str(doc["label"]), form_from_coeff_doc(variables, doc["coeffs"]))


def curve_to_doc(curve: CurveClassForm) -> dict:
    cone = curve.cone
    return {
        "variables": list(cone.variables),
        "class_vars": list(curve.class_vars),
        "marked_vars": list(curve.marked_vars),
        "mult_var": curve.mult_var,
        "constraints": [constraint_to_doc(c) for c in cone.constraints],
        "rays": [list(r) for r in cone.rays],
        "floors": [f.coeff_doc() for f in cone.lattice_floors],
    }


def curve_from_doc(doc, space: AmbientSpace) -> CurveClassForm:
    variables = tuple(str(v) for v in doc["variables"])
    cone = ClassCone(
        variables=variables,
        constraints=tuple(constraint_from_doc(variables, c) for c in doc["constraints"]),
        rays=tuple(tuple(int(x) for x in r) for r in doc["rays"]),
        lattice_floors=tuple(form_from_coeff_doc(variables, f) for f in doc["floors"]),
    )
    return CurveClassForm(
        space=space,
        cone=cone,
        class_vars=tuple(str(v) for v in doc["class_vars"]),
        marked_vars=tuple(str(v) for v in doc["marked_vars"]),
        mult_var=doc["mult_var"],
    )


def form_to_doc(form: LinForm) -> list:
    return form.coeff_doc()


def form_from_doc(variables, doc) -> LinForm:
    return form_from_coeff_doc(variables, doc)


__all__ = [
    "FORMAT",
    "canonical_json",
    "ambient_to_doc",
    "ambient_from_doc",
    "bundle_to_doc",
    "bundle_from_doc",
    "constraint_to_doc",
    "constraint_from_doc",
    "curve_to_doc",
    "curve_from_doc",
    "form_to_doc",
    "form_from_doc",
    "rat_to_doc",
    "rat_from_doc",
]
