"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars over Q are plain :class:`fractions.Fraction` values.  Scalars over
GF(p) are :class:`ModP` values.  Matrices do not store scalar objects for
GF(p); they store reduced residues in an integer array and go through the
owning :class:`Field` for arithmetic.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import isprime

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "ModP",
    "FieldMismatchError",
    "QQ",
    "GF",
    "parse_field",
    "add",
    "sub",
    "mul",
    "div",
    "inverse",
]


class FieldMismatchError(ValueError):
    pass


class ModP:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        if not isinstance(value, (int, np.integer)):
            raise TypeError(f"residue must be an integer, got {type(value).__name__}")
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "value", int(value) % self.p)

    def __setattr__(self, name, value):
        raise AttributeError("ModP is immutable")

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.value, k, self.p), self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, p={self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Coefficient field of a matrix.

    Subclasses fix the numpy storage dtype and the reduction applied after
    every ring operation on raw arrays.
    """

    dtype = object
    characteristic = 0

    def normalize(self, arr):
        return arr

    def inv(self, x):
        raise NotImplementedError

    def coerce(self, v):
        raise NotImplementedError

    def element(self, v):
        """Wrap a raw stored entry as a user-facing scalar."""
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, x):
        return str(x)

    def descriptor(self):
        raise NotImplementedError

    def array(self, data):
        """Convert nested data to a reduced array in this field's storage."""
        arr = np.array(data, dtype=object)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d grid of entries, got ndim={arr.ndim}")
        out = np.empty(arr.shape, dtype=self.dtype)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self.coerce(v)
        return out

    def zeros(self, shape):
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.coerce(0))
            return out
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.coerce(1)
        return out


class RationalField(Field):
    """The field Q with arbitrary-precision :class:`Fraction` entries."""

    dtype = object
    characteristic = 0

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / Fraction(x)

    def coerce(self, v):
        if isinstance(v, ModP):
            raise FieldMismatchError("cannot use a GF(p) scalar as a rational")
        if isinstance(v, str):
            return self.parse(v)
        if isinstance(v, float):
            raise TypeError("floating-point entries are not exact; pass a Fraction or a string")
        if isinstance(v, np.integer):
            v = int(v)
        return Fraction(v)

    def element(self, v):
        return Fraction(v)

    def parse(self, text):
        text = text.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not a rational literal: {text!r}") from None
        if sep and (den.strip().startswith(("-", "+"))):
            raise ValueError(f"denominator must be unsigned: {text!r}")
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(n, d)

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


# int64 storage is safe while n * (p - 1)**2 stays below 2**63 for the
# matrix sizes we handle (n <= ~10**4 at p <= 2**24).
_INT64_MAX_PRIME = 1 << 24


class PrimeField(Field):
    """The prime field GF(p); entries stored as reduced residues."""

    def __init__(self, p):
        p = int(p)
        if p < 2 or not isprime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64 if p <= _INT64_MAX_PRIME else object

    def normalize(self, arr):
        return arr % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(x, -1, self.p)

    def coerce(self, v):
        if isinstance(v, ModP):
            if v.p != self.p:
                raise FieldMismatchError(f"GF({v.p}) scalar in GF({self.p}) matrix")
            return v.value
        if isinstance(v, str):
            return self.parse(v)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                return (v.numerator * self.inv(v.denominator)) % self.p
            v = v.numerator
        if isinstance(v, (int, np.integer)):
            return int(v) % self.p
        raise TypeError(f"cannot coerce {type(v).__name__} into GF({self.p})")

    def element(self, v):
        return ModP(int(v), self.p)

    def parse(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError:
            raise ValueError(f"not a residue literal: {text!r}") from None

    def format(self, x):
        return str(int(x))

    def descriptor(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def parse_field(desc):
    """Field from ``"Q"``, ``"Fp:7"``, ``{"Fp": 7}`` or an existing field."""
    if isinstance(desc, Field):
        return desc
    if isinstance(desc, dict):
        if set(desc) != {"Fp"}:
            raise ValueError(f"unknown field descriptor {desc!r}")
        return GF(desc["Fp"])
    if isinstance(desc, str):
        s = desc.strip()
        if s in ("Q", "QQ"):
            return QQ
        head, sep, tail = s.partition(":")
        if sep and head in ("Fp", "F", "GF"):
            try:
                return GF(int(tail))
            except ValueError as exc:
                raise ValueError(f"bad field descriptor {desc!r}: {exc}") from None
    raise ValueError(f"unknown field descriptor {desc!r}")


def _check_same(x, y):
    if isinstance(x, ModP) != isinstance(y, ModP):
        raise FieldMismatchError(f"{x!r} and {y!r} live in different fields")
    if isinstance(x, ModP) and x.p != y.p:
        raise FieldMismatchError(f"GF({x.p}) vs GF({y.p})")


def add(x, y):
    _check_same(x, y)
    return x + y


def sub(x, y):
    _check_same(x, y)
    return x - y


def mul(x, y):
    _check_same(x, y)
    return x * y


def div(x, y):
    _check_same(x, y)
    if y == 0:
        raise ZeroDivisionError("division by zero")
    return x / y


def inverse(x):
    if isinstance(x, ModP):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("0 has no inverse")
    return 1 / Fraction(x)
