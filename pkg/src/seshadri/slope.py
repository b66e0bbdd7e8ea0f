"""Minimal-slope calculus on curves.

mu_min(E) is the minimal slope (degree/rank) among quotient bundles of E on
a smooth curve.  Exact values come from split data; extensions only give the
lower bound min of the stage slopes; twisting shifts everything by the
degree of the twisting line bundle; and an ample bundle on a smooth rational
curve splits into line bundles of degree >= 1, so mu_min >= 1 there.

Symbolic bounds over a cone of curve classes are concave piecewise-linear
forms, represented as a tuple of linear forms whose pointwise min is meant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .ambient import SpecialRay
from .bundle import ON_CURVE_SPLIT, BundlePresentation, RestrictionModel
from .forms import LinForm

EXACT = "exact"
LOWER_BOUND = "lower-bound"

SlopeValue = Union[Fraction, tuple[LinForm, ...]]


@dataclass(frozen=True)
class SlopeBound:
    value: SlopeValue
    mode: str
    provenance: str

    def __post_init__(self):
        if self.mode not in (EXACT, LOWER_BOUND):
            raise ValueError(f"unknown slope mode {self.mode!r}")

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT


def mu_min_split(degrees: Sequence[int], ranks: Optional[Sequence[int]] = None) -> SlopeBound:
    """Exact mu_min of a direct sum with the given quotient degrees.

    Ranks default to 1 (line-bundle summands); mixed ranks give slopes
    degree/rank per summand.
    """
    degrees = list(degrees)
    if not degrees:
        raise ValueError("mu_min of an empty sum is undefined")
    if ranks is None:
        ranks = [1] * len(degrees)
    if len(ranks) != len(degrees):
        raise ValueError("one rank per degree required")
    if any(r < 1 for r in ranks):
        raise ValueError("ranks must be positive")
    value = min(Fraction(d, r) for d, r in zip(degrees, ranks))
    return SlopeBound(value=value, mode=EXACT, provenance="split")


def mu_min_lb_extension(stages: Union[RestrictionModel, Sequence[LinForm]]) -> SlopeBound:
    """mu_min lower bound from a filtration: pointwise min of the stage forms."""
    forms = tuple(stages.stages) if isinstance(stages, RestrictionModel) else tuple(stages)
    if len(forms) < 2:
        raise ValueError("extension bound needs at least two stages")
    return SlopeBound(value=forms, mode=LOWER_BOUND, provenance="extension-lemma")


def mu_min_twist(base: SlopeBound, shift: Union[int, Fraction, LinForm]) -> SlopeBound:
    """mu_min(E tensor L) = mu_min(E) + deg L, preserving exactness."""
    if isinstance(base.value, tuple):
        if not isinstance(shift, LinForm):
            raise TypeError("symbolic slope bounds twist by linear forms")
        value: SlopeValue = tuple(f + shift for f in base.value)
    else:
        if isinstance(shift, LinForm):
            raise TypeError("numeric slope bounds twist by rationals")
        value = base.value + Fraction(shift)
    return SlopeBound(value=value, mode=base.mode, provenance="twist")


def rational_ample_rule(E: BundlePresentation, ray: SpecialRay) -> SlopeBound:
    """mu_min(E restricted to a smooth rational curve) >= 1 for ample E.

    Refuses unless ampleness is declared on the presentation and the ray is
    flagged as a smooth rational curve; certification then falls back to the
    extension bound.
    """
    if not E.ample_declared:
        raise ValueError("ampleness not declared; the rational-curve rule refuses")
    if not (ray.smooth and ray.rational):
        raise ValueError(f"ray {ray.name} is not flagged as a smooth rational curve")
    return SlopeBound(value=Fraction(1), mode=LOWER_BOUND, provenance="rational-ample")


def hacon_epsilon(
    E: Union[BundlePresentation, Sequence[int]],
    rank_weights: Optional[Sequence[int]] = None,
) -> Fraction:
    """Seshadri constant of an ample bundle on a smooth curve: mu_min(E).

    Holds at every point of the curve.  Rejects non-ample input (a quotient
    slope <= 0).
    """
    if isinstance(E, BundlePresentation):
        if E.kind != ON_CURVE_SPLIT:
            raise ValueError("hacon_epsilon needs on-curve splitting data")
        degrees: Sequence[int] = E.degrees
    else:
        degrees = E
    bound = mu_min_split(degrees, rank_weights)
    if bound.value <= 0:
        raise ValueError(
            f"bundle is not ample on the curve (quotient slope {bound.value} <= 0)"
        )
    return bound.value
