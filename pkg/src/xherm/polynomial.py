"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

import numpy as np

Scalar = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"exact rational coefficient required, got {type(value).__name__}")


class RationalPoly:
    """Immutable polynomial ``sum_k c_k x**k`` with ``Fraction`` coefficients.

    Zero coefficients are never stored. The zero polynomial has degree ``-1``
    (see :attr:`ZERO_DEGREE`).
    """

    ZERO_DEGREE = -1
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, Scalar], Iterable[Scalar], None] = None):
        table: dict[int, Fraction] = {}
        if coeffs is None:
            pass
        elif isinstance(coeffs, Mapping):
            for deg, c in coeffs.items():
                if int(deg) < 0:
                    raise ValueError("negative degree")
                c = _as_fraction(c)
                if c:
                    table[int(deg)] = table.get(int(deg), Fraction(0)) + c
        else:
            for deg, c in enumerate(coeffs):
                c = _as_fraction(c)
                if c:
                    table[deg] = c
        self._coeffs = {d: c for d, c in table.items() if c}

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar) -> "RationalPoly":
        return cls({0: c})

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls({1: 1})

    # inspection ----------------------------------------------------------
    @property
    def degree(self) -> int:
        return max(self._coeffs) if self._coeffs else self.ZERO_DEGREE

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def coeff(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coeffs[self.degree] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def dense(self, length: int | None = None) -> list[Fraction]:
        """Coefficient list ``[c_0, c_1, ...]`` padded to ``length``."""
        n = self.degree + 1 if length is None else length
        return [self.coeff(k) for k in range(n)]

    def parity(self) -> int | None:
        """0 if even, 1 if odd, None if mixed or zero."""
        parities = {d % 2 for d in self._coeffs}
        return parities.pop() if len(parities) == 1 else None

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.constant(_as_fraction(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, Fraction(0)) + c
        return RationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            s = _as_fraction(other)
            return RationalPoly({d: c * s for d, c in self._coeffs.items()})
        out: dict[int, Fraction] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, Fraction(0)) + c1 * c2
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _as_fraction(scalar)
        if not s:
            raise ZeroDivisionError("division of polynomial by zero")
        return RationalPoly({d: c / s for d, c in self._coeffs.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = RationalPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == RationalPoly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def derivative(self, order: int = 1) -> "RationalPoly":
        p = self
        for _ in range(order):
            p = RationalPoly({d - 1: d * c for d, c in p._coeffs.items() if d > 0})
        return p

    # evaluation ----------------------------------------------------------
    def eval_exact(self, x: Scalar) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for k in range(self.degree, -1, -1):
            acc = acc * x + self.coeff(k)
        return acc

    def __call__(self, z):
        """Evaluate in floating point (real or complex, scalar or array)."""
        z = np.asarray(z)
        acc = np.zeros_like(z, dtype=np.result_type(z.dtype, float))
        for k in range(self.degree, -1, -1):
            acc = acc * z + float(self.coeff(k))
        return acc[()] if acc.ndim == 0 else acc

    # display -------------------------------------------------------------
    def to_json_dict(self) -> dict[str, str]:
        """Degree-keyed ``{"k": "p/q"}`` mapping in ascending degree order."""
        return {str(d): _fraction_str(self._coeffs[d]) for d in sorted(self._coeffs)}

    def __repr__(self):
        if not self._coeffs:
            return "RationalPoly(0)"
        terms = []
        for d in sorted(self._coeffs, reverse=True):
            c = self._coeffs[d]
            mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{_fraction_str(c)}{'*' + mono if mono else ''}")
        return "RationalPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def wronskian(polys: list[RationalPoly]) -> RationalPoly:
    """Exact Wronskian ``det[p_i^{(j)}]`` by cofactor expansion along the first row."""
    if not polys:
        raise ValueError("Wronskian of an empty list")
    size = len(polys)
    matrix = [[p.derivative(j) for p in polys] for j in range(size)]
    return _det(matrix)


def _det(m: list[list[RationalPoly]]) -> RationalPoly:
    if len(m) == 1:
        return m[0][0]
    total = RationalPoly()
    for col, entry in enumerate(m[0]):
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in m[1:]]
        term = entry * _det(minor)
        total = total + term if col % 2 == 0 else total - term
    return total
