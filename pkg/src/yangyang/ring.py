"""Exact Laurent polynomials in a formal variable ``q`` with rational exponents.

Values are immutable.  Internally a value stores a positive common denominator
``den`` and a mapping ``numerator -> coefficient`` so that the term
``coeff * q**(num/den)`` is kept with integer keys; this keeps the hot
arithmetic loops on plain ints.  ``den`` is always the least common
denominator of the exponents, so the internal form is canonical.
"""

from __future__ import annotations

import cmath
import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

__all__ = ["QLaurent", "QFrac", "q", "ZERO", "ONE", "parse", "serialize", "divide_exact"]

Number = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _canonical(den: int, terms: dict[int, int]) -> tuple[int, dict[int, int]]:
    g = den
    for k in terms:
        if g == 1:
            break
        g = gcd(g, k)
    if g > 1:
        den //= g
        terms = {k // g: v for k, v in terms.items()}
    return den, terms


class QLaurent:
    """Finite sum of ``c * q**e`` with integer ``c`` and rational ``e``."""

    __slots__ = ("_den", "_terms", "_hash")

    def __init__(self, terms: Mapping[Number, int] | None = None):
        den = 1
        if terms:
            for e in terms:
                den = _lcm(den, Fraction(e).denominator)
        acc: dict[int, int] = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be integers, got {c!r}")
            if c:
                e = Fraction(e)
                k = e.numerator * (den // e.denominator)
                acc[k] = acc.get(k, 0) + c
        acc = {k: v for k, v in acc.items() if v}
        self._den, self._terms = _canonical(den, acc)
        self._hash = None

    @classmethod
    def _raw(cls, den: int, terms: dict[int, int]) -> "QLaurent":
        # terms must already be free of zero coefficients
        obj = object.__new__(cls)
        obj._den, obj._terms = _canonical(den, terms) if den > 1 else (den, terms)
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: Number = 0, coeff: int = 1) -> "QLaurent":
        e = Fraction(exponent)
        if not coeff:
            return ZERO
        return cls._raw(e.denominator, {e.numerator: coeff})

    @classmethod
    def const(cls, c: int) -> "QLaurent":
        return cls._raw(1, {0: c}) if c else ZERO

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[Fraction, int]:
        d = self._den
        return {Fraction(k, d): v for k, v in sorted(self._terms.items())}

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``±q**e``, the units of the ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def monomial_parts(self) -> tuple[Fraction, int]:
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        (k, c), = self._terms.items()
        return Fraction(k, self._den), c

    def degree_range(self) -> tuple[Fraction, Fraction]:
        if not self._terms:
            raise ValueError("zero has no degree")
        ks = self._terms.keys()
        return Fraction(min(ks), self._den), Fraction(max(ks), self._den)

    # -- arithmetic -----------------------------------------------------
    def _aligned(self, other: "QLaurent"):
        d1, d2 = self._den, other._den
        if d1 == d2:
            return d1, self._terms, other._terms
        d = _lcm(d1, d2)
        m1, m2 = d // d1, d // d2
        t1 = self._terms if m1 == 1 else {k * m1: v for k, v in self._terms.items()}
        t2 = other._terms if m2 == 1 else {k * m2: v for k, v in other._terms.items()}
        return d, t1, t2

    def __add__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        d, t1, t2 = self._aligned(other)
        out = dict(t1)
        for k, v in t2.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return QLaurent._raw(d, out)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent._raw(self._den, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "QLaurent":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        d, t1, t2 = self._aligned(other)
        if len(t1) == 1:
            (k1, v1), = t1.items()
            return QLaurent._raw(d, {k1 + k: v1 * v for k, v in t2.items()})
        if len(t2) == 1:
            (k2, v2), = t2.items()
            return QLaurent._raw(d, {k2 + k: v2 * v for k, v in t1.items()})
        out: dict[int, int] = {}
        for k1, v1 in t1.items():
            for k2, v2 in t2.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return QLaurent._raw(d, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QLaurent":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "QLaurent":
        """Inverse of a unit ``±q**e``; anything else is not invertible."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in the Laurent ring")
        (k, c), = self._terms.items()
        return QLaurent._raw(self._den, {-k: c})

    def shift(self, exponent: Number) -> "QLaurent":
        """Multiply by ``q**exponent``."""
        return self * QLaurent.monomial(exponent)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._den == other._den and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._den, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- numeric --------------------------------------------------------
    def eval(self, q_value: complex) -> complex:
        """Evaluate at a nonzero complex ``q`` using the principal branch."""
        if q_value == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at q = 0")
        log_q = cmath.log(q_value)
        d = self._den
        return sum((c * cmath.exp(log_q * k / d) for k, c in self._terms.items()), 0j)

    # -- text -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            if e == 0:
                mono = str(abs(c))
            else:
                pw = "q" if e == 1 else f"q^{e}" if e.denominator == 1 else f"q^({e})"
                mono = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {m}" for s, m in parts[1:]])

    def to_triples(self) -> list[list]:
        return [[e.numerator, e.denominator, str(c)] for e, c in self.terms.items()]


def _coerce(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, int):
        return QLaurent.const(x)
    return NotImplemented


ZERO = QLaurent._raw(1, {})
ONE = QLaurent._raw(1, {0: 1})


def q(exponent: Number = 1, coeff: int = 1) -> QLaurent:
    """The monomial ``coeff * q**exponent``."""
    return QLaurent.monomial(exponent, coeff)


def serialize(a: QLaurent) -> str:
    """Canonical JSON text ``[[num, den, "coeff"], ...]`` sorted by exponent."""
    return json.dumps(a.to_triples(), separators=(",", ":"))


def from_triples(triples: Iterable) -> QLaurent:
    terms: dict[Fraction, int] = {}
    prev = None
    for item in triples:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise ValueError(f"malformed term {item!r}: expected [num, den, coeff]")
        num, den, coeff = item
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
            raise ValueError(f"exponent parts must be integers in {item!r}")
        if den <= 0 or gcd(num, den) != 1:
            raise ValueError(f"exponent {num}/{den} is not in lowest terms")
        if isinstance(coeff, str):
            try:
                coeff = int(coeff)
            except ValueError:
                raise ValueError(f"bad coefficient {coeff!r}") from None
        elif not isinstance(coeff, int) or isinstance(coeff, bool):
            raise ValueError(f"bad coefficient {coeff!r}")
        if coeff == 0:
            raise ValueError("zero coefficients are not stored")
        e = Fraction(num, den)
        if prev is not None and e <= prev:
            raise ValueError("terms must be sorted by strictly increasing exponent")
        prev = e
        terms[e] = coeff
    return QLaurent(terms)


def parse(text: str) -> QLaurent:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    if not isinstance(data, list):
        raise ValueError("expected a JSON array of [num, den, coeff] triples")
    return from_triples(data)


def divide_exact(a: QLaurent, b: QLaurent) -> QLaurent | None:
    """Return ``a / b`` if it lies in the Laurent ring, else None."""
    a, b = _coerce(a), _coerce(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero")
    if a.is_zero():
        return ZERO
    if b.is_unit():
        return a * b.inverse()
    d, ta, tb = a._aligned(b)
    b_top = max(tb)
    b_low = min(tb)
    lead = tb[b_top]
    low_limit = min(ta) - b_low
    rem = dict(ta)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        shift = top - b_top
        if shift < low_limit or rem[top] % lead:
            return None
        c = rem[top] // lead
        quot[shift] = c
        for k, v in tb.items():
            key = k + shift
            val = rem.get(key, 0) - c * v
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return QLaurent._raw(d, quot)


class QFrac:
    """Formal fraction ``num / den`` of Laurent polynomials.

    Only used where the ring genuinely needs a denominator (the middle entry
    of the B-type similarity matrix, unknot normalisation for B/C/D).  No
    gcd cancellation is attempted beyond pulling out unit denominators;
    equality is by cross multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent | int, den: QLaurent | int = 1):
        num, den = _coerce(num), _coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_unit():
            num, den = num * den.inverse(), ONE
        self.num, self.den = num, den

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def reduced(self) -> "QFrac":
        """Cancel the denominator when it divides the numerator exactly."""
        if self.is_polynomial():
            return self
        quot = divide_exact(self.num, self.den)
        return self if quot is None else QFrac(quot)

    def __add__(self, other) -> "QFrac":
        if isinstance(other, (QLaurent, int)):
            other = QFrac(other)
        if not isinstance(other, QFrac):
            return NotImplemented
        if self.den == other.den:
            return QFrac(self.num + other.num, self.den)
        return QFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "QFrac":
        return QFrac(-self.num, self.den)

    def __sub__(self, other) -> "QFrac":
        return self + (-QFrac(other) if isinstance(other, (QLaurent, int)) else -other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (QLaurent, int)):
            other = QFrac(other)
        if not isinstance(other, QFrac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("QFrac is unhashable; equality is by cross multiplication")

    def __mul__(self, other) -> "QFrac":
        if isinstance(other, (QLaurent, int)):
            other = QFrac(other)
        return QFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QFrac":
        if isinstance(other, (QLaurent, int)):
            other = QFrac(other)
        return QFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "QFrac":
        return QFrac(other) / self

    def eval(self, q_value: complex) -> complex:
        return self.num.eval(q_value) / self.den.eval(q_value)

    def to_json(self) -> dict:
        return {"num": self.num.to_triples(), "den": self.den.to_triples()}

    def __str__(self) -> str:
        return str(self.num) if self.is_polynomial() else f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        if self.is_polynomial():
            return f"QFrac({self.num})"
        return f"QFrac(({self.num}) / ({self.den}))"
