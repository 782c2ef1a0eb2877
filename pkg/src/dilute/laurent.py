"""Exact Laurent polynomials in the algebra parameters.

Monomials are products ``q**a * omega**b * sqrtQ**c`` with integer
exponents (negative allowed). For the dilute Temperley-Lieb quotient both
``omega`` and ``sqrtQ`` are themselves Laurent polynomials in ``q`` and
:meth:`LaurentPoly.specialize_dtl` removes them, leaving a polynomial in
``q`` alone, so equality becomes decidable.

Coefficients are kept exact when they are ``int`` or ``Fraction``; complex
floats are accepted but then equality is only numerical.
"""
from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Mapping

VARIABLES = ("q", "omega", "sqrtQ")

Exponent = tuple[int, int, int]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, complex) and c.imag == 0:
        return _normalize(c.real)
    if isinstance(c, float) and c.is_integer():
        return int(c)
    return c


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, numbers.Number] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != 3:
                raise ValueError(f"exponent must have 3 entries, got {exp}")
            exp = tuple(int(e) for e in exp)
            c = _normalize(c)
            if c != 0:
                clean[exp] = _normalize(clean.get(exp, 0) + c)
                if clean[exp] == 0:
                    del clean[exp]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def q(cls, k: int = 1, c=1) -> LaurentPoly:
        return cls({(k, 0, 0): c})

    @classmethod
    def omega(cls, k: int = 1, c=1) -> LaurentPoly:
        return cls({(0, k, 0): c})

    @classmethod
    def sqrtQ(cls, k: int = 1, c=1) -> LaurentPoly:
        return cls({(0, 0, k): c})

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, numbers.Number):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- structure --------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, numbers.Number]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self._terms.values())

    def variables(self) -> set[str]:
        used = set()
        for exp in self._terms:
            used.update(v for v, e in zip(VARIABLES, exp) if e)
        return used

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponent, numbers.Number] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be inverted")
            (exp, c), = self._terms.items()
            inv = Fraction(1, c) if isinstance(c, int) else 1 / c
            return LaurentPoly({tuple(-e for e in exp): inv}) ** (-k)
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- evaluation and substitution ---------------------------------------
    def evaluate(self, q: complex, omega: complex | None = None,
                 sqrtQ: complex | None = None) -> complex:
        total = 0j
        for (a, b, c), coeff in self._terms.items():
            term = complex(coeff) * q**a
            if b:
                if omega is None:
                    raise ValueError("polynomial depends on omega but no value given")
                term *= omega**b
            if c:
                if sqrtQ is None:
                    raise ValueError("polynomial depends on sqrtQ but no value given")
                term *= sqrtQ**c
            total += term
        return total

    def substitute(self, omega: LaurentPoly | None = None,
                   sqrtQ: LaurentPoly | None = None) -> LaurentPoly:
        """Replace ``omega`` and/or ``sqrtQ`` by polynomials (in ``q``).

        Negative powers of a substituted variable require it to be a
        monomial.
        """
        out = LaurentPoly()
        for (a, b, c), coeff in self._terms.items():
            term = LaurentPoly({(a, 0 if omega is not None else b,
                                 0 if sqrtQ is not None else c): coeff})
            if omega is not None and b:
                term = term * omega**b
            if sqrtQ is not None and c:
                term = term * sqrtQ**c
            out = out + term
        return out

    def specialize_dtl(self) -> LaurentPoly:
        """Substitute the dilute Temperley-Lieb values omega = -q^3 and
        sqrtQ = -(q^2 + q^-2)."""
        return self.substitute(omega=DTL_OMEGA, sqrtQ=DTL_SQRTQ)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        """``{"num": [[re, im, power], ...]}`` for polynomials in q alone;
        otherwise powers are ``[p_q, p_omega, p_sqrtQ]`` lists."""
        univariate = self.variables() <= {"q"}
        rows = []
        for exp, c in self._terms.items():
            c = complex(c)
            power = exp[0] if univariate else list(exp)
            rows.append([c.real, c.imag, power])
        return {"num": rows}

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentPoly:
        terms = {}
        for re, im, power in data["num"]:
            exp = (int(power), 0, 0) if isinstance(power, int) else tuple(power)
            c = _normalize(complex(re, im)) if im else _normalize(float(re))
            terms[exp] = terms.get(exp, 0) + c
        return cls(terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms.items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def lsum(items: Iterable) -> LaurentPoly:
    out = LaurentPoly()
    for x in items:
        out = out + x
    return out


DTL_OMEGA = LaurentPoly.q(3, -1)
DTL_SQRTQ = LaurentPoly({(2, 0, 0): -1, (-2, 0, 0): -1})
