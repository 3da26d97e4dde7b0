"""Exact scalar arithmetic for the algebra engine.

Every coefficient is a Laurent polynomial in the deformation parameter q
with rational coefficients, stored sparsely by exponent.  All arithmetic
is exact; floats only appear when a coefficient is evaluated at a numeric
value of q.
"""

from __future__ import annotations

from fractions import Fraction


class QLaurent:
    """Sparse Laurent polynomial sum_n c_n q^n with rational c_n.

    Immutable.  Zero terms are never stored, so ``not self._terms``
    is the canonical zero test.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            for exponent, coeff in terms.items():
                if not isinstance(coeff, Fraction):
                    coeff = Fraction(coeff)
                if coeff:
                    clean[int(exponent)] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "QLaurent":
        return cls()

    @classmethod
    def one(cls) -> "QLaurent":
        return cls({0: 1})

    @classmethod
    def rational(cls, value) -> "QLaurent":
        return cls({0: Fraction(value)})

    @classmethod
    def q_power(cls, exponent: int, coeff=1) -> "QLaurent":
        return cls({exponent: Fraction(coeff)})

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms as (exponent, coefficient) pairs, sorted by exponent."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for e, c in other._terms.items():
            s = merged.get(e, _F0) + c
            if s:
                merged[e] = s
            else:
                merged.pop(e, None)
        out = QLaurent.__new__(QLaurent)
        out._terms = merged
        return out

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        out = QLaurent.__new__(QLaurent)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = prod.get(e, _F0) + c1 * c2
                if s:
                    prod[e] = s
                else:
                    prod.pop(e, None)
        out = QLaurent.__new__(QLaurent)
        out._terms = prod
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def scale_exponents(self, factor: int) -> "QLaurent":
        """Substitute q -> q^factor (exact, exponents multiply)."""
        out = QLaurent.__new__(QLaurent)
        out._terms = {e * factor: c for e, c in self._terms.items()}
        return out

    def conjugate(self) -> "QLaurent":
        """Complex conjugate; coefficients are real so this is the identity."""
        return self

    def evaluate(self, q):
        """Numeric value at a given q (float or complex)."""
        total = 0.0
        for e, c in self._terms.items():
            total = total + (c.numerator / c.denominator) * q ** e
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in sorted(self._terms.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                if mag == 1:
                    body = qpart
                elif mag.denominator == 1:
                    body = f"{mag}{qpart}"
                else:
                    body = f"({mag}){qpart}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"QLaurent({self})"


def _coerce(value):
    if isinstance(value, QLaurent):
        return value
    if isinstance(value, (int, Fraction)):
        return QLaurent({0: Fraction(value)})
    return NotImplemented


_F0 = Fraction(0)
