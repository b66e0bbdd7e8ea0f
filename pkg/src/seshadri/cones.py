"""Pointed rational polyhedral cones: extremal rays and Farkas multipliers.

All cones in this package are tiny (2-7 variables, at most a dozen
constraints), so extremal rays are enumerated by brute force over active
constraint subsets and Farkas multipliers by brute force over basic supports.
No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .forms import LinForm


@dataclass(frozen=True)
class Constraint:
    """A labelled homogeneous inequality: form >= 0."""

    label: str
    form: LinForm

    def __str__(self) -> str:
        return f"{self.label}: {self.form} >= 0"


@dataclass(frozen=True)
class Cone:
    """The set {x : c.form(x) >= 0 for every constraint c}."""

    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        for c in self.constraints:
            if c.form.variables != self.variables:
                raise ValueError(f"constraint {c.label} uses foreign variables")

    def with_constraints(self, extra: Sequence[Constraint]) -> "Cone":
        return Cone(self.variables, self.constraints + tuple(extra))

    def contains(self, point: Sequence) -> bool:
        return all(c.form.evaluate(point) >= 0 for c in self.constraints)

    def extremal_rays(self) -> tuple[tuple[int, ...], ...]:
        return _extremal_rays_cached(self)


def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place fraction-exact RREF; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _nullspace(rows: list[list[Fraction]], dim: int) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0} in R^dim."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    reduced, pivots = _row_reduce(rows)
    free = [j for j in range(dim) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * dim
        vec[j] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -reduced[r][j]
        basis.append(vec)
    return basis


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same ray)."""
    denom = 1
    for v in vec:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(v // g for v in ints)


@lru_cache(maxsize=None)
def _extremal_rays_cached(cone: Cone) -> tuple[tuple[int, ...], ...]:
    n = len(cone.variables)
    matrix = [list(c.form.coeffs) for c in cone.constraints]
    lineality = _nullspace(matrix, n)
    if lineality:
        raise ValueError(
            "cone has nonzero lineality space; extremal rays are undefined"
        )
    rays: set[tuple[int, ...]] = set()
    m = len(matrix)
    if n - 1 > m:
        return ()
    for subset in itertools.combinations(range(m), n - 1):
        kernel = _nullspace([matrix[i] for i in subset], n)
        if len(kernel) != 1:
            continue
        direction = kernel[0]
        for candidate in (direction, [-v for v in direction]):
            if all(
                sum(row[j] * candidate[j] for j in range(n)) >= 0 for row in matrix
            ):
                rays.add(_primitive(candidate))
                break
    return tuple(sorted(rays))


def solve_exact(columns: list[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Unique exact solution of sum(x_j * columns[j]) = target, or None.

    Returns None when the system is inconsistent or the columns are linearly
    dependent (dependent supports are covered by smaller subsets).
    """
    n = len(target)
    k = len(columns)
    rows = [[columns[j][i] for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    reduced, pivots = _row_reduce(rows)
    if k in pivots:  # pivot in the augmented column: inconsistent
        return None
    if len(pivots) != k:  # rank-deficient columns
        return None
    solution = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][k]
    return solution


def farkas_multipliers(cone: Cone, target: LinForm) -> Optional[tuple[Fraction, ...]]:
    """Nonnegative multipliers l with sum(l_i * constraint_i) == target.

    Searches basic supports in (size, lexicographic) order, so the returned
    certificate is deterministic.  Returns None when the target is not in the
    dual cone.
    """
    if target.variables != cone.variables:
        raise ValueError("target uses foreign variables")
    m = len(cone.constraints)
    n = len(cone.variables)
    if target.is_zero():
        return tuple(Fraction(0) for _ in range(m))
    columns = [c.form.coeffs for c in cone.constraints]
    for size in range(1, min(m, n) + 1):
        for support in itertools.combinations(range(m), size):
            solution = solve_exact([columns[j] for j in support], target.coeffs)
            if solution is None or any(v < 0 for v in solution):
                continue
            full = [Fraction(0)] * m
            for j, v in zip(support, solution):
                full[j] = v
            return tuple(full)
    return None


@dataclass(frozen=True)
class NonnegResult:
    """Outcome of a single linear nonnegativity check on a cone."""

    ok: bool
    multipliers: Optional[tuple[Fraction, ...]] = None
    counterexample: Optional[tuple[int, ...]] = None


def prove_linear_nonneg(cone: Cone, target: LinForm) -> NonnegResult:
    """Decide target >= 0 on the cone.

    A pointed cone is the conic hull of its extremal rays, so checking the
    target on every ray decides the inequality; Farkas then guarantees
    multipliers exist whenever the answer is yes.
    """
    for ray in cone.extremal_rays():
        if target.evaluate(ray) < 0:
            return NonnegResult(ok=False, counterexample=ray)
    multipliers = farkas_multipliers(cone, target)
    if multipliers is None:
        raise RuntimeError(
            f"Farkas search failed for {target} although all rays pass; "
            "this indicates a bug in the ray enumeration"
        )
    return NonnegResult(ok=True, multipliers=multipliers)
