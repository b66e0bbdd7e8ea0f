"""Homogeneous linear forms over a fixed tuple of variables, with exact coefficients.

Every certified quantity in this package is either a rational number or a
homogeneous linear form in the symbolic curve-class parameters.  Forms carry
no constant term by construction, so non-homogeneous data cannot enter a
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an exact input (int, Fraction, or 'p/q' string) to a Fraction.

    Floats are rejected: certificates must be bit-exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    if isinstance(value, float):
        raise TypeError(f"floats are not allowed (got {value!r}); use 'p/q' strings")
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_to_doc(value: Fraction) -> dict:
    """Canonical JSON encoding of an exact rational."""
    q = Fraction(value)
    return {"num": q.numerator, "den": q.denominator}


def rat_from_doc(doc) -> Fraction:
    if not isinstance(doc, Mapping) or set(doc) != {"num", "den"}:
        raise ValueError(f"malformed rational {doc!r}")
    num, den = doc["num"], doc["den"]
    if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
        raise ValueError(f"malformed rational {doc!r}")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise ValueError(f"rational {doc!r} is not in lowest terms")
    return q


def format_rat(value: Fraction) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class LinForm:
    """A homogeneous linear form sum(coeffs[i] * variables[i])."""

    variables: tuple[str, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.variables) != len(self.coeffs):
            raise ValueError("coefficient count does not match variable count")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LinForm":
        return cls(tuple(variables), tuple(Fraction(0) for _ in variables))

    @classmethod
    def from_dict(cls, variables: Sequence[str], data: Mapping[str, Scalar]) -> "LinForm":
        unknown = set(data) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        return cls(
            tuple(variables),
            tuple(Fraction(data.get(v, 0)) for v in variables),
        )

    @classmethod
    def unit(cls, variables: Sequence[str], name: str) -> "LinForm":
        return cls.from_dict(variables, {name: 1})

    def coeff(self, name: str) -> Fraction:
        return self.coeffs[self.variables.index(name)]

    def _check_compatible(self, other: "LinForm") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"forms over different variables: {self.variables} vs {other.variables}"
            )

    def __add__(self, other: "LinForm") -> "LinForm":
        self._check_compatible(other)
        return LinForm(self.variables, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinForm") -> "LinForm":
        self._check_compatible(other)
        return LinForm(self.variables, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinForm":
        return LinForm(self.variables, tuple(-a for a in self.coeffs))

    def scale(self, factor: Scalar) -> "LinForm":
        c = Fraction(factor)
        return LinForm(self.variables, tuple(a * c for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("point dimension mismatch")
        return sum((c * Fraction(x) for c, x in zip(self.coeffs, point)), Fraction(0))

    def evaluate_named(self, values: Mapping[str, Scalar]) -> Fraction:
        return self.evaluate([values.get(v, 0) for v in self.variables])

    def integer_coeffs(self) -> tuple[int, ...]:
        """Coefficients as integers; raises if any is non-integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c} in {self}")
            out.append(c.numerator)
        return tuple(out)

    def coeff_doc(self) -> list:
        return [rat_to_doc(c) for c in self.coeffs]

    def __str__(self) -> str:
        parts = []
        for name, c in zip(self.variables, self.coeffs):
            if c == 0:
                continue
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{format_rat(c)}*{name}"
            if parts and not term.startswith("-"):
                parts.append("+")
                parts.append(term)
            elif parts:
                parts.append("-")
                parts.append(term.lstrip("-"))
            else:
                parts.append(term)
        return " ".join(parts) if parts else "0"


def form_from_coeff_doc(variables: Sequence[str], doc) -> LinForm:
    if not isinstance(doc, list) or len(doc) != len(variables):
        raise ValueError(f"malformed coefficient list {doc!r}")
    return LinForm(tuple(variables), tuple(rat_from_doc(c) for c in doc))
