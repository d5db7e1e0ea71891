"""Exact single-variable Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal
    exactly when their term dictionaries are equal.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "A"):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._terms = clean
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "A") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], var: str = "A") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e, c in pairs:
            acc[e] = acc.get(e, 0) + c
        return cls(acc, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._terms and self._terms:
                if not (other.is_constant() or self.is_constant()):
                    raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial is not a unit over the integers")
            return LaurentPoly({e * n: c ** (-n)}, self.var)
        result = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Return p(x**k), optionally renaming the variable."""
        return LaurentPoly({e * k: c for e, c in self._terms.items()}, var or self.var)

    def divide_exponents(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Inverse of :meth:`substitute_power`; every exponent must be divisible by ``k``."""
        if any(e % k for e in self._terms):
            raise ValueError(f"exponents not all divisible by {k}")
        return LaurentPoly({e // k: c for e, c in self._terms.items()}, var or self.var)

    def evaluate(self, x):
        return sum(c * x ** e for e, c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly({self._terms!r}, var={self.var!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
