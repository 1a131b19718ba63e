"""Exact scalar fields: the rationals, the Gaussian rationals and prime fields.

Values are plain Python objects supporting ``+ - * /``:

* rationals are :class:`fractions.Fraction`,
* Gaussian rationals are :class:`GaussianRational`,
* residues modulo ``p`` are :class:`ModP`.

A :class:`Field` coerces integers into its value type and handles the JSON
representation of its values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Field",
    "GaussianRational",
    "ModP",
    "QQ",
    "QQI",
    "GF",
    "parse_fraction",
    "format_fraction",
    "height",
]


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected rational string, got {s!r}")
    return Fraction(s.strip())


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({format_fraction(self.re)}, {format_fraction(self.im)})"


class ModP:
    """A residue class modulo a prime ``p``, stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing residues mod {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"inverse of zero mod {self.p}")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Descriptor of an exact base field.

    ``kind`` is ``"Q"``, ``"QI"`` (Gaussian rationals) or ``"Fp"``; ``p`` is
    set only for prime fields.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "QI", "Fp"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"Fp needs a prime p < 2^31, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only prime fields carry a modulus")

    def __call__(self, x):
        """Coerce ``x`` into this field."""
        if self.kind == "Q":
            if isinstance(x, GaussianRational):
                if x.im != 0:
                    raise ValueError(f"{x!r} is not rational")
                return x.re
            return Fraction(x)
        if self.kind == "QI":
            if isinstance(x, GaussianRational):
                return x
            return GaussianRational(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} in field mod {self.p}")
            return x
        x = Fraction(x)
        return ModP(x.numerator, self.p) / x.denominator

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def to_json(self, x):
        x = self(x)
        if self.kind == "Q":
            return format_fraction(x)
        if self.kind == "QI":
            return {"re": format_fraction(x.re), "im": format_fraction(x.im)}
        return str(x.v)

    def from_json(self, s):
        if self.kind == "Q":
            return parse_fraction(s)
        if self.kind == "QI":
            if isinstance(s, dict):
                return GaussianRational(parse_fraction(s["re"]), parse_fraction(s["im"]))
            return GaussianRational(parse_fraction(s))
        if isinstance(s, str):
            s = int(s)
        if not isinstance(s, int) or isinstance(s, bool):
            raise ValueError(f"expected residue, got {s!r}")
        return ModP(s, self.p)

    @property
    def tag(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @classmethod
    def from_tag(cls, tag: str) -> "Field":
        if tag in ("Q", "QI"):
            return cls(tag)
        if tag.startswith("Fp:"):
            return cls("Fp", int(tag[3:]))
        raise ValueError(f"unknown field tag {tag!r}")

    def __repr__(self):
        return f"Field({self.tag})"


QQ = Field("Q")
QQI = Field("QI")


def GF(p: int) -> Field:
    return Field("Fp", p)


def height(x) -> int:
    """Bit size used to rank pivots: ``numerator * denominator`` bit-length."""
    if isinstance(x, Fraction):
        return (abs(x.numerator) * x.denominator).bit_length()
    if isinstance(x, GaussianRational):
        return height(x.re) + height(x.im)
    if isinstance(x, ModP):
        return 0
    return abs(int(x)).bit_length()
