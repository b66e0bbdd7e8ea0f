"""Exact intersection theory and curve-class geometry on the ambient spaces.

Supported ambients: Hirzebruch surfaces F_e (with F_0 = P^1 x P^1), the
projective plane, and P^n for n >= 3 (lines only, no surface intersection
form).  On F_e the Picard lattice is generated by the section sigma
(sigma^2 = -e) and a fiber f; on the plane by the line class H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import cones
from .forms import LinForm

HIRZEBRUCH = "hirzebruch"
PLANE = "plane"
SPACE = "space"


@dataclass(frozen=True)
class AmbientSpace:
    kind: str
    e: int = 0
    n: int = 0

    @classmethod
    def hirzebruch(cls, e: int) -> "AmbientSpace":
        if e < 0:
            raise ValueError("Hirzebruch invariant e must be nonnegative")
        return cls(kind=HIRZEBRUCH, e=e)

    @classmethod
    def plane(cls) -> "AmbientSpace":
        return cls(kind=PLANE)

    @classmethod
    def projective_space(cls, n: int) -> "AmbientSpace":
        if n < 3:
            raise ValueError("use AmbientSpace.plane() for n = 2")
        return cls(kind=SPACE, n=n)

    @property
    def is_surface(self) -> bool:
        return self.kind in (HIRZEBRUCH, PLANE)

    @property
    def basis(self) -> tuple[str, ...]:
        if self.kind == HIRZEBRUCH:
            return ("sigma", "f")
        if self.kind == PLANE:
            return ("H",)
        raise ValueError("P^n (n >= 3) has no divisor-class basis here; lines only")

    def divisor(self, *coeffs: int) -> "DivisorClass":
        return DivisorClass(self, tuple(int(c) for c in coeffs))

    def zero_class(self) -> "DivisorClass":
        return DivisorClass(self, tuple(0 for _ in self.basis))

    def __str__(self) -> str:
        if self.kind == HIRZEBRUCH:
            return f"F_{self.e}"
        if self.kind == PLANE:
            return "P^2"
        return f"P^{self.n}"


@dataclass(frozen=True)
class DivisorClass:
    """Integer divisor class in the ambient basis (a*sigma + b*f, or d*H)."""

    space: AmbientSpace
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.space.basis):
            raise ValueError("coefficient count does not match the ambient basis")
        if not all(isinstance(c, int) for c in self.coeffs):
            raise TypeError("divisor classes have integer coefficients")

    def _check_space(self, other: "DivisorClass") -> None:
        if self.space != other.space:
            raise ValueError(f"classes on different ambients: {self.space} vs {other.space}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_space(other)
        return DivisorClass(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check_space(other)
        return DivisorClass(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.space, tuple(-a for a in self.coeffs))

    def __rmul__(self, factor: int) -> "DivisorClass":
        if not isinstance(factor, int):
            raise TypeError("divisor classes only scale by integers")
        return DivisorClass(self.space, tuple(factor * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for name, c in zip(self.space.basis, self.coeffs):
            if c == 0:
                continue
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}{name}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def intersect(c1: DivisorClass, c2: DivisorClass) -> int:
    """Intersection number of two divisor classes on a surface ambient.

    On F_e: sigma.sigma = -e, sigma.f = 1, f.f = 0.  On P^2: H.H = 1.
    """
    c1._check_space(c2)
    space = c1.space
    if space.kind == HIRZEBRUCH:
        a1, b1 = c1.coeffs
        a2, b2 = c2.coeffs
        return -space.e * a1 * a2 + a1 * b2 + a2 * b1
    if space.kind == PLANE:
        return c1.coeffs[0] * c2.coeffs[0]
    raise ValueError("P^n (n >= 3) supports no surface intersection pairing")


def self_intersection(c: DivisorClass) -> int:
    return intersect(c, c)


def nef_cone(space: AmbientSpace) -> tuple[DivisorClass, DivisorClass]:
    """Generators of the nef cone: {sigma + e*f, f} on F_e."""
    if space.kind != HIRZEBRUCH:
        raise ValueError("nef cone generators are only tabulated for F_e")
    return (space.divisor(1, space.e), space.divisor(0, 1))


def _mori_rays(space: AmbientSpace) -> tuple[DivisorClass, ...]:
    if space.kind == HIRZEBRUCH:
        return (space.divisor(1, 0), space.divisor(0, 1))
    if space.kind == PLANE:
        return (space.divisor(1),)
    raise ValueError("no curve-class cone on P^n (n >= 3)")


def is_nef(c: DivisorClass) -> bool:
    """Nefness via pairing with the extremal curve classes (dual test)."""
    return all(intersect(c, r) >= 0 for r in _mori_rays(c.space))


def is_ample(c: DivisorClass) -> bool:
    return all(intersect(c, r) > 0 for r in _mori_rays(c.space))


@dataclass(frozen=True)
class ClassCone:
    """Polyhedral cone of symbolic curve classes.

    ``constraints`` are homogeneous (the conic closure); ``lattice_floors``
    are forms guaranteed to be >= 1 at every integer class the cone
    represents (e.g. a >= 1 on the main Hirzebruch cone), which is what probe
    applicability relies on.
    """

    variables: tuple[str, ...]
    constraints: tuple[cones.Constraint, ...]
    rays: tuple[tuple[int, ...], ...]
    lattice_floors: tuple[LinForm, ...] = ()
    ray_flags: tuple[frozenset[str], ...] = ()

    def geometry(self) -> cones.Cone:
        return cones.Cone(self.variables, self.constraints)

    def with_constraints(self, extra: Sequence[cones.Constraint]) -> "ClassCone":
        geo = self.geometry().with_constraints(extra)
        return ClassCone(
            variables=self.variables,
            constraints=geo.constraints,
            rays=geo.extremal_rays(),
            lattice_floors=self.lattice_floors,
        )

    def contains(self, point: Sequence) -> bool:
        return self.geometry().contains(point)

    def validate(self) -> None:
        """Check the listed rays against the constraint description.

        Farkas both ways on these small instances: every ray satisfies every
        constraint, and the listed rays are exactly the extremal rays of the
        constraint cone (so the cone is their conic hull).
        """
        for ray in self.rays:
            for c in self.constraints:
                if c.form.evaluate(ray) < 0:
                    raise ValueError(f"ray {ray} violates constraint {c.label}")
        computed = self.geometry().extremal_rays()
        if tuple(sorted(self.rays)) != computed:
            raise ValueError(
                f"listed rays {sorted(self.rays)} differ from extremal rays {computed}"
            )


@dataclass(frozen=True)
class SpecialRay:
    """A curve class handled outside the main cone (smooth member, mult 1)."""

    name: str
    cls: DivisorClass
    values: tuple[int, ...]
    smooth: bool = True
    rational: bool = True
    pencil: bool = False  # has a member through every point


@dataclass(frozen=True)
class IrreducibleClasses:
    main: ClassCone
    special: tuple[SpecialRay, ...]


def _constraint(variables, label, data) -> cones.Constraint:
    return cones.Constraint(label, LinForm.from_dict(variables, data))


def irreducible_class_cone(space: AmbientSpace) -> IrreducibleClasses:
    """Superset of the irreducible curve classes on a surface ambient.

    On F_e the main cone is {a >= 1, b >= e*a} (homogenised to a >= 0 for
    certification) plus the special rays sigma and f.  The weaker bound
    b >= a is kept on F_1 even where a strict inequality would be sharp: a
    larger candidate set can only lower a certified bound, never break it.
    On P^2 the cone is {d >= 1} and the line ray is smooth through every
    point.
    """
    if space.kind == HIRZEBRUCH:
        variables = ("a", "b")
        e = space.e
        constraints = [
            _constraint(variables, "a>=0", {"a": 1}),
            _constraint(variables, f"b-{e}a>=0" if e else "b>=0", {"a": -e, "b": 1}),
        ]
        floors = [LinForm.unit(variables, "a")]
        if e == 0:
            floors.append(LinForm.unit(variables, "b"))
        main = ClassCone(
            variables=variables,
            constraints=tuple(constraints),
            rays=tuple(sorted([(1, e), (0, 1)])),
            lattice_floors=tuple(floors),
        )
        special = (
            SpecialRay("sigma", space.divisor(1, 0), (1, 0), pencil=(e == 0)),
            SpecialRay("f", space.divisor(0, 1), (0, 1), pencil=True),
        )
        return IrreducibleClasses(main=main, special=special)
    if space.kind == PLANE:
        variables = ("d",)
        main = ClassCone(
            variables=variables,
            constraints=(_constraint(variables, "d>=0", {"d": 1}),),
            rays=((1,),),
            lattice_floors=(LinForm.unit(variables, "d"),),
            ray_flags=(frozenset({"smooth", "rational", "pencil"}),),
        )
        return IrreducibleClasses(main=main, special=())
    raise ValueError("irreducible-class cones exist only on surface ambients")


@dataclass(frozen=True)
class CurveClassForm:
    """A symbolic curve class constrained to a polyhedral cone.

    ``class_vars`` are the coefficients of the numerical class in the ambient
    basis; ``marked_vars`` are multiplicities at marked points of an
    ideal-sheaf presentation; ``mult_var``, when present, is the multiplicity
    at the (arbitrary) point x, bounded by probe constraints inside the cone.
    """

    space: AmbientSpace
    cone: ClassCone
    class_vars: tuple[str, ...]
    marked_vars: tuple[str, ...] = ()
    mult_var: Optional[str] = None

    def __post_init__(self):
        if len(self.class_vars) != len(self.space.basis):
            raise ValueError("class variables must match the ambient basis")
        for v in self.class_vars + self.marked_vars:
            if v not in self.cone.variables:
                raise ValueError(f"variable {v} missing from the cone")

    def class_pairing(self, cls: DivisorClass) -> LinForm:
        """The linear form cls . C in the cone variables."""
        if cls.space != self.space:
            raise ValueError("divisor class lives on a different ambient")
        variables = self.cone.variables
        if self.space.kind == HIRZEBRUCH:
            p, q = cls.coeffs
            a_var, b_var = self.class_vars
            return LinForm.from_dict(
                variables, {a_var: q - self.space.e * p, b_var: p}
            )
        if self.space.kind == PLANE:
            (p,) = cls.coeffs
            return LinForm.from_dict(variables, {self.class_vars[0]: p})
        raise ValueError("no symbolic pairing on P^n (n >= 3)")

    def marked_sum(self) -> LinForm:
        total = LinForm.zero(self.cone.variables)
        for v in self.marked_vars:
            total = total + LinForm.unit(self.cone.variables, v)
        return total

    def mult_form(self) -> LinForm:
        if self.mult_var is None:
            raise ValueError("curve form has no explicit multiplicity variable")
        return LinForm.unit(self.cone.variables, self.mult_var)

    def class_values(self, values: Mapping[str, int]) -> DivisorClass:
        return DivisorClass(self.space, tuple(int(values[v]) for v in self.class_vars))


def surface_curve_form(space: AmbientSpace) -> CurveClassForm:
    """The default symbolic curve on a surface: its main irreducible cone."""
    data = irreducible_class_cone(space)
    return CurveClassForm(
        space=space,
        cone=data.main,
        class_vars=data.main.variables,
    )


def plane_with_marked_points(
    n_points: int, container_degree: int = 2
) -> CurveClassForm:
    """Symbolic plane curves with multiplicities at n marked points.

    The marked points are assumed to lie on one irreducible curve of degree
    ``container_degree`` (the unique conic for five general points); for any
    curve B distinct from it, Bezout bounds sum(m_i) <= container_degree * d.
    The container curve itself is excluded from the cone and must be handled
    as an explicit witness.  The multiplicity at x is the variable mx,
    bounded by the line pencil through x (mx <= d).
    """
    if n_points < 1:
        raise ValueError("need at least one marked point")
    space = AmbientSpace.plane()
    marked = tuple(f"m{i}" for i in range(1, n_points + 1))
    variables = ("d",) + marked + ("mx",)
    constraints = [_constraint(variables, "d>=0", {"d": 1})]
    for v in marked:
        constraints.append(_constraint(variables, f"{v}>=0", {v: 1}))
    bezout = {"d": container_degree}
    bezout.update({v: -1 for v in marked})
    constraints.append(
        _constraint(variables, f"bezout:{container_degree}d-sum(m)>=0", bezout)
    )
    constraints.append(_constraint(variables, "mx>=0", {"mx": 1}))
    constraints.append(_constraint(variables, "line:d-mx>=0", {"d": 1, "mx": -1}))
    geo = cones.Cone(variables, tuple(constraints))
    cone = ClassCone(
        variables=variables,
        constraints=tuple(constraints),
        rays=geo.extremal_rays(),
        lattice_floors=(
            LinForm.unit(variables, "d"),
            LinForm.unit(variables, "mx"),
        ),
    )
    return CurveClassForm(
        space=space,
        cone=cone,
        class_vars=("d",),
        marked_vars=marked,
        mult_var="mx",
    )


FIBER_PENCIL = "fiber-pencil"
VERY_AMPLE = "very-ample"
LINE_PENCIL = "line-pencil"


@dataclass(frozen=True)
class Probe:
    """A curve class with a member through every point, bounding mult_x.

    For an irreducible curve C and a probe member B through x, Bezout gives
    mult_x C <= P.C as long as P.C >= 1; when C itself is the probe's smooth
    member the bound is mult_x C = 1.
    """

    name: str
    cls: DivisorClass
    kind: str


@dataclass(frozen=True)
class ProbeSet:
    probes: tuple[Probe, ...]

    def validate(self, space: AmbientSpace) -> None:
        """Very-ample probes must lie in the interior of the nef cone."""
        for probe in self.probes:
            if probe.cls.space != space:
                raise ValueError(f"probe {probe.name} lives on a different ambient")
            if probe.kind == VERY_AMPLE:
                if not is_ample(probe.cls):
                    raise ValueError(f"probe {probe.name} is not in the ample cone")
                if space.is_surface and self_intersection(probe.cls) <= 0:
                    raise ValueError(f"probe {probe.name} has nonpositive self-intersection")

    def __iter__(self):
        return iter(self.probes)


def default_probes(space: AmbientSpace) -> ProbeSet:
    """The fixed probe configuration per ambient.

    F_e: the fiber pencil plus the very ample class sigma + (e+1)f; on F_0
    the second ruling sigma is a pencil as well.  P^2: the pencil of lines
    through x.
    """
    if space.kind == HIRZEBRUCH:
        probes = [Probe("f", space.divisor(0, 1), FIBER_PENCIL)]
        if space.e == 0:
            probes.append(Probe("sigma", space.divisor(1, 0), FIBER_PENCIL))
        probes.append(
            Probe(
                f"sigma+{space.e + 1}f",
                space.divisor(1, space.e + 1),
                VERY_AMPLE,
            )
        )
        return ProbeSet(tuple(probes))
    if space.kind == PLANE:
        return ProbeSet((Probe("line", space.divisor(1), LINE_PENCIL),))
    raise ValueError("no probe configuration on P^n (n >= 3)")


def probe_applicable(probe: Probe, curve: CurveClassForm) -> bool:
    """True when P.C >= 1 at every integer class of the curve's cone.

    Proven exactly: P.C - F must be nonnegative on the cone for one of the
    declared lattice floors F (forms that are >= 1 at integer classes).
    """
    value = curve.class_pairing(probe.cls)
    geo = curve.cone.geometry()
    for floor in curve.cone.lattice_floors:
        result = cones.prove_linear_nonneg(geo, value - floor)
        if result.ok:
            return True
    return False


@dataclass(frozen=True)
class MultUpperBound:
    """min over applicable probes of P.C, with pointwise special cases.

    The symbolic form is valid on the whole cone; evaluation at a concrete
    class additionally applies the membership rule (bound 1 when the class
    equals a probe class) so that e.g. the fiber class itself gets bound 1.
    """

    curve: CurveClassForm
    forms: tuple[tuple[str, LinForm], ...]
    inapplicable: tuple[str, ...]
    probes: ProbeSet

    def value_at(self, values: Mapping[str, int]) -> Fraction:
        cls = self.curve.class_values(values)
        best: Optional[Fraction] = None
        for probe in self.probes:
            pairing = Fraction(intersect(probe.cls, cls))
            if pairing >= 1:
                bound = pairing
            elif cls == probe.cls:
                bound = Fraction(1)
            else:
                continue
            if best is None or bound < best:
                best = bound
        if best is None:
            raise ValueError(f"no probe bounds the multiplicity of {cls}")
        return best


def mult_upper_bound_form(
    space: AmbientSpace, probes: ProbeSet, curve: CurveClassForm
) -> MultUpperBound:
    """The piecewise-linear multiplicity bound over the curve cone.

    Special rays (smooth members) carry the constant bound 1 and are handled
    by the certification engine, not by this form.  When no probe applies on
    the cone the bound is unbounded, which blocks certification.
    """
    probes.validate(space)
    applicable = []
    rejected = []
    for probe in probes:
        if probe_applicable(probe, curve):
            applicable.append((probe.name, curve.class_pairing(probe.cls)))
        else:
            rejected.append(probe.name)
    return MultUpperBound(
        curve=curve,
        forms=tuple(applicable),
        inapplicable=tuple(rejected),
        probes=probes,
    )
