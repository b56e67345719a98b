"""Univariate polynomials with rational coefficients, usable as scalars in sparse vectors."""
from __future__ import annotations

from fractions import Fraction

from .graded import normalize


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [normalize(Fraction(c)) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly((x,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = Poly.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = Poly.lift(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize(Fraction(acc))

    def integrate(self, lo=0, hi=1):
        """Definite integral over [lo, hi]."""
        anti = [0] + [Fraction(c, k + 1) for k, c in enumerate(self.coeffs)]
        p = Poly(anti)
        return normalize(Fraction(p(hi)) - Fraction(p(lo)))

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*t" if k == 1 else f"{c}*t^{k}")
        return " + ".join(terms)


def evaluate_vector(vec, x) -> dict:
    """Evaluate a vector with polynomial entries at t = x."""
    out = {}
    for k, c in vec.items():
        v = c(x) if isinstance(c, Poly) else c
        if v:
            out[k] = normalize(v)
    return out
