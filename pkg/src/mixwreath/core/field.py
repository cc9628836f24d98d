"""Exact ground fields: the rationals and prime fields GF(p)."""
from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class Field:
    """An exact field.  ``p == 0`` means the rationals.

    Scalars are plain Python ``int`` (always, for GF(p), reduced to
    ``0 <= a < p``) or ``Fraction`` (for the rationals).  Every arithmetic
    result that leaves this class goes through :meth:`norm`.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        if text.startswith("Fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                pass
        raise ValueError(f"unknown field {text!r}; expected 'Q' or 'Fp:<prime>'")

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or "a/b" string into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def norm(self, x):
        if self.p:
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        r = Fraction(1) / x
        return r.numerator if r.denominator == 1 else r

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def to_str(self, x) -> str:
        """Exact text form: integers plainly, rationals as ``num/den``."""
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
