"""Brute-force cross-check oracle over integer curve classes.

Independent of the certification engine: it enumerates every integer class
of a candidate cone up to a degree cap and reports the minimum of the same
ratio the engine bounds (minimal stage degree over multiplicity bound),
together with the special-ray and excluded-curve candidate values.  The hot
enumeration runs on a compiled kernel when the extension built, with a
pure-Python fallback selected at import; SESHADRI_PURE=1 forces the
fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._oracle_py import min_ratio as _min_ratio_pure

try:
    from ._kernel import min_ratio as _min_ratio_compiled
except ImportError:  # extension not built
    _min_ratio_compiled = None

PURE = "pure"
COMPILED = "compiled"


def available_backends() -> tuple[str, ...]:
    if _min_ratio_compiled is not None:
        return (COMPILED, PURE)
    return (PURE,)


def active_backend(requested: Optional[str] = None) -> str:
    """Resolve a backend name; 'auto'/None prefers the compiled kernel."""
    if requested in (None, "auto"):
        if os.environ.get("SESHADRI_PURE"):
            return PURE
        return COMPILED if _min_ratio_compiled is not None else PURE
    if requested == COMPILED:
        if _min_ratio_compiled is None:
            raise ValueError("compiled kernel is not available in this install")
        return COMPILED
    if requested == PURE:
        return PURE
    raise ValueError(f"unknown backend {requested!r}")


@dataclass(frozen=True)
class AffineExpr:
    """const + cap_coeff * cap + sum(coeffs[j] * x[j]) over earlier variables."""

    const: int = 0
    cap_coeff: int = 0
    coeffs: tuple[int, ...] = ()


@dataclass(frozen=True)
class LatticeProblem:
    """Triangular integer enumeration region plus the ratio forms.

    Bounds for variable i may reference variables j < i only; every variable
    needs at least one lower and one upper expression.
    """

    variables: tuple[str, ...]
    lower: tuple[tuple[AffineExpr, ...], ...]
    upper: tuple[tuple[AffineExpr, ...], ...]
    num_forms: tuple[tuple[int, ...], ...]
    den_forms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.variables)
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("one bound list per variable required")
        for i in range(n):
            if not self.lower[i] or not self.upper[i]:
                raise ValueError(f"variable {self.variables[i]} must be bounded")
            for expr in self.lower[i] + self.upper[i]:
                if any(expr.coeffs[j] != 0 for j in range(i, len(expr.coeffs))):
                    raise ValueError("bounds may only reference earlier variables")
        for form in self.num_forms + self.den_forms:
            if len(form) != n:
                raise ValueError("forms must cover every variable")
        if not self.num_forms or not self.den_forms:
            raise ValueError("need at least one numerator and denominator form")


def _kernel_args(problem: LatticeProblem, cap: int):
    n = len(problem.variables)
    expr_const: list[int] = []
    expr_coeffs: list[list[int]] = []
    lo_start, lo_count, hi_start, hi_count = [], [], [], []

    def push(exprs: Sequence[AffineExpr]):
        start = len(expr_const)
        for expr in exprs:
            expr_const.append(expr.const + expr.cap_coeff * cap)
            row = list(expr.coeffs) + [0] * (n - len(expr.coeffs))
            expr_coeffs.append(row)
        return start, len(exprs)

    for i in range(n):
        s, c = push(problem.lower[i])
        lo_start.append(s)
        lo_count.append(c)
        s, c = push(problem.upper[i])
        hi_start.append(s)
        hi_count.append(c)
    return (
        n,
        expr_const,
        expr_coeffs,
        lo_start,
        lo_count,
        hi_start,
        hi_count,
        [list(f) for f in problem.num_forms],
        [list(f) for f in problem.den_forms],
    )


@dataclass(frozen=True)
class LatticeResult:
    found: bool
    ratio: Optional[Fraction]
    point: Optional[tuple[int, ...]]
    count: int
    backend: str


def run_lattice(
    problem: LatticeProblem, cap: int, backend: Optional[str] = None
) -> LatticeResult:
    name = active_backend(backend)
    kernel = _min_ratio_compiled if name == COMPILED else _min_ratio_pure
    found, num, den, point, count = kernel(*_kernel_args(problem, int(cap)))
    return LatticeResult(
        found=bool(found),
        ratio=Fraction(num, den) if found else None,
        point=point,
        count=count,
        backend=name,
    )


def hirzebruch_problem(
    e: int,
    num_forms: Sequence[tuple[int, ...]],
    den_forms: Sequence[tuple[int, ...]],
) -> LatticeProblem:
    """Integer classes a*sigma + b*f with a >= 1, b >= e*a, a + b <= cap.

    On F_0 the main cone additionally has b >= 1.
    """
    lower_b = [AffineExpr(coeffs=(e, 0))]
    if e == 0:
        lower_b.append(AffineExpr(const=1))
    return LatticeProblem(
        variables=("a", "b"),
        lower=((AffineExpr(const=1),), tuple(lower_b)),
        upper=(
            (AffineExpr(cap_coeff=1),),
            (AffineExpr(cap_coeff=1, coeffs=(-1, 0)),),
        ),
        num_forms=tuple(tuple(f) for f in num_forms),
        den_forms=tuple(tuple(f) for f in den_forms),
    )


def marked_plane_problem(
    n_points: int,
    num_forms: Sequence[tuple[int, ...]],
    container_degree: int = 2,
) -> LatticeProblem:
    """Plane classes of degree d <= cap with marked multiplicities.

    Variables (d, m_1..m_n, mx): m_i >= 0 with sum(m_i) <= container_degree*d
    and 1 <= mx <= d; the ratio denominator is the multiplicity mx itself.
    """
    n = n_points + 2
    variables = ("d",) + tuple(f"m{i}" for i in range(1, n_points + 1)) + ("mx",)
    lower = [(AffineExpr(const=1),)]
    upper = [(AffineExpr(cap_coeff=1),)]
    for i in range(n_points):
        lower.append((AffineExpr(),))
        coeffs = [container_degree] + [-1] * i + [0] * (n - 1 - i)
        upper.append((AffineExpr(coeffs=tuple(coeffs)),))
    lower.append((AffineExpr(const=1),))
    upper.append((AffineExpr(coeffs=(1,) + (0,) * (n - 1)),))
    den = tuple([0] * (n - 1) + [1])
    return LatticeProblem(
        variables=variables,
        lower=tuple(lower),
        upper=tuple(upper),
        num_forms=tuple(tuple(f) for f in num_forms),
        den_forms=(den,),
    )


@dataclass(frozen=True)
class OracleCandidate:
    """A candidate outside the lattice scan (special ray or excluded curve)."""

    label: str
    ratio: Fraction


@dataclass(frozen=True)
class OracleSpec:
    scenario: str
    problem: LatticeProblem
    candidates: tuple[OracleCandidate, ...]


@dataclass(frozen=True)
class OracleReport:
    scenario: str
    cap: int
    backend: str
    min_ratio: Fraction
    argmin_label: str
    argmin_values: Optional[tuple[tuple[str, int], ...]]
    lattice_points: int


def run_oracle(spec: OracleSpec, cap: int, backend: Optional[str] = None) -> OracleReport:
    """Minimum ratio over candidates and all lattice points up to the cap.

    Candidates are considered first, in declaration order, with strict-less
    updates, so ties resolve to the earliest candidate deterministically.
    """
    best_label: Optional[str] = None
    best_ratio: Optional[Fraction] = None
    best_values: Optional[tuple[tuple[str, int], ...]] = None
    for candidate in spec.candidates:
        if best_ratio is None or candidate.ratio < best_ratio:
            best_label = candidate.label
            best_ratio = candidate.ratio
            best_values = None
    result = run_lattice(spec.problem, cap, backend)
    if result.found and (best_ratio is None or result.ratio < best_ratio):
        best_label = "cone point"
        best_ratio = result.ratio
        best_values = tuple(zip(spec.problem.variables, result.point))
    if best_ratio is None:
        raise ValueError("oracle found no candidate curve classes")
    return OracleReport(
        scenario=spec.scenario,
        cap=cap,
        backend=result.backend,
        min_ratio=best_ratio,
        argmin_label=best_label,
        argmin_values=best_values,
        lattice_points=result.count,
    )
