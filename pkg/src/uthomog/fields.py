"""Exact scalar fields: the rationals and prime fields of odd characteristic."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``p = 0`` is Q (values are ``Fraction``); otherwise F_p (values are ints in ``[0, p)``)."""

    p: int = 0

    def __post_init__(self):
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")
        if self.p != 0 and not _is_prime(self.p):
            raise FieldError(f"F{self.p}: {self.p} is not prime")

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def spec(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self) -> str:
        return self.spec

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int or Fraction into the field."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else a * b % self.p

    def neg(self, a):
        return -a if self.p == 0 else -a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p == 0 else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        if self.p == 0:
            raise FieldError("Q cannot be enumerated")
        return range(self.p)

    def nonzero(self):
        return range(1, self.p) if self.p else self.elements()

    def random(self, rng, nonzero=False, height=9):
        if self.p:
            return rng.randrange(1 if nonzero else 0, self.p)
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if x or not nonzero:
                return x

    def parse(self, text: str):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/([+-]?\d+))?", text)
        if not m:
            raise FieldError(f"bad scalar literal {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0 or (self.p and den % self.p == 0):
            raise FieldError(f"zero denominator in {text!r}")
        return self(Fraction(int(m.group(1)), den))

    def format(self, a) -> str:
        return str(a)


def parse_field_spec(text: str) -> FieldSpec:
    text = text.strip()
    if text == "Q":
        return FieldSpec(0)
    m = re.fullmatch(r"F(\d+)", text)
    if not m:
        raise FieldError(f"bad field spec {text!r}; expected Q or F<p>")
    return FieldSpec(int(m.group(1)))
