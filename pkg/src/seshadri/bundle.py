"""Vector-bundle presentations and the degree data they induce on curves.

A presentation is one of:

* ``split``: a direct sum of line-bundle classes on a surface;
* ``extension``: a rank-2 extension of line-bundle classes (sub, quot);
* ``ideal_extension``: a rank-2 extension whose quotient is an ideal sheaf
  of marked points twisted by a class -- restricting to a curve with
  multiplicities m_i at the marked points transfers degree sum(m_i) from the
  quotient stage to the sub stage;
* ``on_curve_split``: a bundle on a smooth curve given by quotient degrees;
* ``equivariant_lines``: splitting types on each family of torus-invariant
  lines in P^n.

An accumulated twist class is carried alongside and applied to every stage.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .ambient import AmbientSpace, CurveClassForm, DivisorClass, intersect
from .forms import LinForm

SPLIT = "split"
EXTENSION = "extension"
IDEAL_EXTENSION = "ideal_extension"
ON_CURVE_SPLIT = "on_curve_split"
EQUIVARIANT_LINES = "equivariant_lines"


@dataclass(frozen=True)
class BundlePresentation:
    kind: str
    rank: int
    space: Optional[AmbientSpace] = None
    classes: tuple[DivisorClass, ...] = ()
    sub: Optional[DivisorClass] = None
    quot: Optional[DivisorClass] = None
    marked_points: tuple[str, ...] = ()
    degrees: tuple[int, ...] = ()
    line_families: tuple[tuple[int, ...], ...] = ()
    twist_cls: Optional[DivisorClass] = None
    ample_declared: bool = False
    semistable_delta_zero: bool = False
    uniform_splitting: bool = False

    def __post_init__(self):
        if self.kind == SPLIT:
            if not self.classes:
                raise ValueError("split presentation needs at least one summand")
            if self.rank != len(self.classes):
                raise ValueError("split rank must equal the number of summands")
        elif self.kind in (EXTENSION, IDEAL_EXTENSION):
            if self.sub is None or self.quot is None:
                raise ValueError("extension presentation needs sub and quot classes")
            if self.rank != 2:
                raise ValueError("extension presentations have rank 2")
            if self.kind == IDEAL_EXTENSION:
                if not self.marked_points:
                    raise ValueError("ideal extension needs marked points")
                if len(set(self.marked_points)) != len(self.marked_points):
                    raise ValueError("marked points must be pairwise distinct")
        elif self.kind == ON_CURVE_SPLIT:
            if not self.degrees:
                raise ValueError("on-curve presentation needs quotient degrees")
            if self.rank != len(self.degrees):
                raise ValueError("on-curve rank must equal the number of degrees")
        elif self.kind == EQUIVARIANT_LINES:
            if not self.line_families:
                raise ValueError("equivariant presentation needs line families")
            widths = {len(family) for family in self.line_families}
            if widths != {self.rank}:
                raise ValueError("every line family must split into rank summands")
        else:
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        if self.space is not None and self.twist_cls is None:
            object.__setattr__(self, "twist_cls", self.space.zero_class())

    @classmethod
    def split(cls, classes: Sequence[DivisorClass], **flags) -> "BundlePresentation":
        classes = tuple(classes)
        return cls(
            kind=SPLIT,
            rank=len(classes),
            space=classes[0].space if classes else None,
            classes=classes,
            **flags,
        )

    @classmethod
    def extension(cls, sub: DivisorClass, quot: DivisorClass, **flags) -> "BundlePresentation":
        if sub.space != quot.space:
            raise ValueError("sub and quot must live on the same ambient")
        return cls(kind=EXTENSION, rank=2, space=sub.space, sub=sub, quot=quot, **flags)

    @classmethod
    def ideal_extension(
        cls,
        sub: DivisorClass,
        quot: DivisorClass,
        n_points: int,
        **flags,
    ) -> "BundlePresentation":
        if sub.space != quot.space:
            raise ValueError("sub and quot must live on the same ambient")
        points = tuple(f"p{i}" for i in range(1, n_points + 1))
        return cls(
            kind=IDEAL_EXTENSION,
            rank=2,
            space=sub.space,
            sub=sub,
            quot=quot,
            marked_points=points,
            **flags,
        )

    @classmethod
    def on_curve(cls, degrees: Sequence[int], **flags) -> "BundlePresentation":
        degrees = tuple(int(d) for d in degrees)
        return cls(kind=ON_CURVE_SPLIT, rank=len(degrees), degrees=degrees, **flags)

    @classmethod
    def equivariant(
        cls, line_families: Sequence[Sequence[int]], **flags
    ) -> "BundlePresentation":
        families = tuple(tuple(int(d) for d in fam) for fam in line_families)
        return cls(
            kind=EQUIVARIANT_LINES,
            rank=len(families[0]) if families else 0,
            line_families=families,
            **flags,
        )

    def stage_classes(self) -> tuple[DivisorClass, ...]:
        """Twisted line-bundle classes of the filtration stages (surfaces only)."""
        if self.kind == SPLIT:
            return tuple(c + self.twist_cls for c in self.classes)
        if self.kind in (EXTENSION, IDEAL_EXTENSION):
            return (self.sub + self.twist_cls, self.quot + self.twist_cls)
        raise ValueError(f"{self.kind} presentation has no surface stage classes")

    def c1(self) -> DivisorClass:
        return sum(self.stage_classes()[1:], self.stage_classes()[0])


def twist(E: BundlePresentation, L: DivisorClass) -> BundlePresentation:
    """Tensor by the line-bundle class L: every stage shifts by L."""
    if E.space is None:
        raise ValueError(f"{E.kind} presentation has no ambient to twist on")
    if L.space != E.space:
        raise ValueError("twist class lives on a different ambient")
    return replace(E, twist_cls=E.twist_cls + L)


@dataclass(frozen=True)
class RestrictionModel:
    """Stage degrees of a presentation pulled back to a curve normalization."""

    curve: CurveClassForm
    stages: tuple[LinForm, ...]

    def degree_sum(self) -> LinForm:
        total = self.stages[0]
        for s in self.stages[1:]:
            total = total + s
        return total

    def at(self, values: Mapping[str, int]) -> tuple[int, ...]:
        degs = []
        for s in self.stages:
            v = s.evaluate_named(values)
            if v.denominator != 1:
                raise ValueError("stage degree is not an integer at these values")
            degs.append(v.numerator)
        return tuple(degs)


def restriction_model(E: BundlePresentation, C: CurveClassForm) -> RestrictionModel:
    """Symbolic stage degrees of E restricted to the curve class C.

    For an ideal extension the marked multiplicities transfer degree between
    the stages: (sub.C + sum(m_i), quot.C - sum(m_i)).  Exactness of degree
    (stages sum to c1(E).C) holds by construction.
    """
    if E.kind in (ON_CURVE_SPLIT, EQUIVARIANT_LINES):
        raise ValueError(f"{E.kind} presentation does not restrict to symbolic classes")
    if E.space != C.space:
        raise ValueError("bundle and curve live on different ambients")
    if E.kind == SPLIT:
        return RestrictionModel(C, tuple(C.class_pairing(c) for c in E.stage_classes()))
    sub_form = C.class_pairing(E.sub + E.twist_cls)
    quot_form = C.class_pairing(E.quot + E.twist_cls)
    if E.kind == EXTENSION:
        return RestrictionModel(C, (sub_form, quot_form))
    if len(C.marked_vars) != len(E.marked_points):
        raise ValueError(
            "curve form must carry one multiplicity variable per marked point"
        )
    transfer = C.marked_sum()
    return RestrictionModel(C, (sub_form + transfer, quot_form - transfer))


@dataclass(frozen=True)
class ChernData:
    c1: DivisorClass
    c2: int
    discriminant: int  # 2*r*c2 - (r-1)*c1^2


def chern(E: BundlePresentation) -> ChernData:
    """Chern data of a surface presentation (twist included).

    c1 is the sum of the stage classes, c2 their pairwise product; an ideal
    extension adds the length of the marked scheme to c2.  When the
    presentation declares vanishing discriminant, the computed value must
    agree (a consistency check on the declaration, not a proof).
    """
    if E.space is None or not E.space.is_surface:
        raise ValueError(f"{E.kind} presentation has no surface Chern data")
    stages = E.stage_classes()
    c1 = E.c1()
    c2 = 0
    for i in range(len(stages)):
        for j in range(i + 1, len(stages)):
            c2 += intersect(stages[i], stages[j])
    if E.kind == IDEAL_EXTENSION:
        c2 += len(E.marked_points)
    delta = 2 * E.rank * c2 - (E.rank - 1) * intersect(c1, c1)
    if E.semistable_delta_zero and delta != 0:
        raise ValueError(
            f"declared vanishing discriminant, but 2r*c2 - (r-1)*c1^2 = {delta}"
        )
    return ChernData(c1=c1, c2=c2, discriminant=delta)


def detect_non_nef_witness(
    E: BundlePresentation, C: CurveClassForm, values: Mapping[str, int]
) -> int:
    """Minimal stage degree of E on the concrete curve described by values.

    A negative value exhibits a quotient of negative degree on the curve, so
    the bundle is not nef.
    """
    return min(restriction_model(E, C).at(values))
